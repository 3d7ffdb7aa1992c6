// SPDX-License-Identifier: Apache-2.0
//
// evcb - evanescent codeword analysis for Kronecker-product DFT codebooks
// Copyright (C) 2026 The evcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "evcb/linksim.hpp"

#include "evcb/rayleigh.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace evcb {

void SimConfig::validate() const {
    cfg.validate();
    geometry.validate();
    if (geometry.n1 != cfg.n1 || geometry.n2 != cfg.n2)
        throw Error(ErrorCode::shape, "array and codebook antenna counts differ");
    if (drops < 1) throw Error(ErrorCode::invalid_argument, "drops must be >= 1");
    if (snr_db_list.empty()) throw Error(ErrorCode::invalid_argument, "at least one SNR point is required");
    for (double s : snr_db_list)
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
            throw Error(ErrorCode::invalid_argument, "SNR must be a number or +inf");
}

namespace {

// Scores |v_lm^T y|^2 for every codeword using the separable DFT structure.
class Selector {
public:
    explicit Selector(const CodebookConfig &cfg)
        : cfg_(cfg), bx_(dft_basis(cfg.n1, cfg.o1)), by_(dft_basis(cfg.n2, cfg.o2)),
          partial_(static_cast<std::size_t>(cfg.grid1()) * cfg.n2) {}

    CodewordIndex best(const std::vector<cplx> &y, const EvanescentMask *mask) {
        const int n1 = cfg_.n1, n2 = cfg_.n2, g1 = cfg_.grid1(), g2 = cfg_.grid2();
        std::fill(partial_.begin(), partial_.end(), cplx{});
        for (int l = 0; l < g1; ++l)
            for (int i = 0; i < n1; ++i) {
                const cplx b = bx_[static_cast<std::size_t>(l) * n1 + i];
                for (int k = 0; k < n2; ++k)
                    partial_[static_cast<std::size_t>(l) * n2 + k] += b * y[static_cast<std::size_t>(i) * n2 + k];
            }
        CodewordIndex arg{-1, -1};
        double best = -1.0;
        for (int l = 0; l < g1; ++l)
            for (int m = 0; m < g2; ++m) {
                if (mask && mask->flag({l, m})) continue;
                cplx acc{};
                for (int k = 0; k < n2; ++k)
                    acc += partial_[static_cast<std::size_t>(l) * n2 + k] * by_[static_cast<std::size_t>(m) * n2 + k];
                const double score = std::norm(acc);
                if (score > best) {
                    best = score;
                    arg = {l, m};
                }
            }
        if (arg.l < 0) throw Error(ErrorCode::invalid_argument, "every codeword is excluded by the restriction");
        return arg;
    }

private:
    CodebookConfig cfg_;
    std::vector<cplx> bx_;
    std::vector<cplx> by_;
    std::vector<cplx> partial_;
};

double normalized_gain(const std::vector<cplx> &v, const std::vector<cplx> &h) {
    cplx acc{};
    double vv = 0.0, hh = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i] * h[i];
        vv += std::norm(v[i]);
        hh += std::norm(h[i]);
    }
    return std::norm(acc) / (vv * hh);
}

struct Drop {
    std::vector<cplx> channel;
    std::vector<cplx> interference; // already scaled, empty when unused
    std::vector<cplx> unit_noise;   // CN(0, 1)
};

Drop draw_drop(const SimConfig &sim, std::size_t index) {
    std::mt19937_64 rng = substream(sim.seed, index);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    // cos(theta) uniform on (0, 1] gives uniform solid angle on the hemisphere.
    auto direction = [&] {
        const double ct = 1.0 - uni(rng);
        return Direction{std::acos(ct), kTwoPi * uni(rng)};
    };
    Drop d;
    d.channel = los_channel(sim.geometry, direction()).gains;
    // Always consume the interferer draws so drop streams stay aligned.
    const Direction idir = direction();
    const double iphase = kTwoPi * uni(rng);
    if (sim.interference_power_db) {
        const double amp = std::pow(10.0, *sim.interference_power_db / 20.0);
        d.interference = los_channel(sim.geometry, idir).gains;
        for (cplx &g : d.interference) g *= std::polar(amp, iphase);
    }
    const double s = std::sqrt(0.5);
    d.unit_noise.resize(d.channel.size());
    for (cplx &z : d.unit_noise) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {s * re, s * im};
    }
    return d;
}

} // namespace

CodewordIndex select_codeword(const CodebookConfig &cfg, const std::vector<cplx> &observation,
                              const EvanescentMask *mask) {
    cfg.validate();
    if (observation.size() != cfg.antennas()) throw Error(ErrorCode::shape, "observation length does not match codebook");
    return Selector(cfg).best(observation, mask);
}

std::vector<SelectionStats> run_drops(const SimConfig &sim) {
    sim.validate();
    const CodebookConfig &cfg = sim.cfg;
    const EvanescentMask mask(cfg, sim.geometry.alpha1(), sim.geometry.alpha2());
    Selector selector(cfg);

    std::vector<SelectionStats> stats(sim.snr_db_list.size());
    for (std::size_t s = 0; s < stats.size(); ++s) {
        stats[s].snr_db = sim.snr_db_list[s];
        stats[s].drops = sim.drops;
        stats[s].restricted = sim.restrict_evanescent;
        stats[s].cfg = cfg;
        stats[s].counts.assign(cfg.cardinality(), 0);
    }

    std::vector<cplx> y(cfg.antennas());
    for (std::size_t drop = 0; drop < sim.drops; ++drop) {
        const Drop d = draw_drop(sim, drop);
        for (std::size_t s = 0; s < stats.size(); ++s) {
            const double snr_db = sim.snr_db_list[s];
            const bool noiseless = std::isinf(snr_db);
            const double snr = noiseless ? std::numeric_limits<double>::infinity() : std::pow(10.0, snr_db / 10.0);
            const double sigma = noiseless ? 0.0 : std::sqrt(1.0 / snr);
            for (std::size_t i = 0; i < y.size(); ++i) {
                y[i] = d.channel[i] + sigma * d.unit_noise[i];
                if (!d.interference.empty()) y[i] += d.interference[i];
            }
            const CodewordIndex pick = selector.best(y, sim.restrict_evanescent ? &mask : nullptr);
            SelectionStats &st = stats[s];
            ++st.counts[static_cast<std::size_t>(pick.l) * cfg.grid2() + pick.m];
            if (mask.flag(pick)) ++st.evanescent_selections;
            const double gain = normalized_gain(codeword_entries(cfg, pick.l, pick.m), d.channel);
            st.throughput_proxy += noiseless ? std::numeric_limits<double>::infinity() : std::log2(1.0 + snr * gain);
        }
    }
    for (SelectionStats &st : stats) {
        st.evanescent_fraction = static_cast<double>(st.evanescent_selections) / static_cast<double>(st.drops);
        st.throughput_proxy /= static_cast<double>(st.drops);
    }
    return stats;
}

Heatmap selection_heatmap(const SelectionStats &stats, double alpha1, double alpha2, std::size_t cap,
                          int boundary_points) {
    if (stats.drops == 0 || stats.counts.empty())
        throw Error(ErrorCode::invalid_argument, "selection statistics are empty");
    const CodebookConfig &cfg = stats.cfg;
    Heatmap map;
    map.cells.reserve(stats.counts.size());
    for (int l = 0; l < cfg.grid1(); ++l)
        for (int m = 0; m < cfg.grid2(); ++m) {
            const std::size_t raw = stats.count({l, m});
            map.cells.push_back({{l, m}, raw, std::min(raw, cap)});
        }
    // Ellipse l' = a1 N1 O1 cos t, m' = a2 N2 O2 sin t, clipped to the index square.
    const double half1 = cfg.grid1() / 2.0, half2 = cfg.grid2() / 2.0;
    for (int p = 0; p < boundary_points; ++p) {
        const double t = kTwoPi * p / boundary_points;
        const double x = alpha1 * cfg.grid1() * std::cos(t);
        const double y = alpha2 * cfg.grid2() * std::sin(t);
        if (x > -half1 && x <= half1 && y > -half2 && y <= half2) map.boundary.emplace_back(x, y);
    }
    return map;
}

} // namespace evcb
