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

#include "evcb/rayleigh.hpp"

#include <cmath>
#include <string>

namespace evcb {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

std::vector<ChannelVector> generate_rayleigh(const RayleighConfig &cfg) {
    const ArrayGeometry g = ArrayGeometry::from_alpha(cfg.n1, cfg.n2, cfg.alpha1, cfg.alpha2);
    std::vector<ChannelVector> out;
    out.reserve(cfg.realizations);
    const double s = std::sqrt(0.5);
    for (std::size_t r = 0; r < cfg.realizations; ++r) {
        std::mt19937_64 rng = substream(cfg.seed, r);
        std::normal_distribution<double> normal(0.0, 1.0);
        ChannelVector ch{g, std::vector<cplx>(g.antennas())};
        for (cplx &v : ch.gains) {
            const double re = normal(rng);
            const double im = normal(rng);
            v = {s * re, s * im};
        }
        out.push_back(std::move(ch));
    }
    return out;
}

namespace {

void check_shape(const ChannelVector &ch) {
    ch.geometry.validate();
    if (ch.gains.size() != ch.geometry.antennas())
        throw Error(ErrorCode::shape, "channel has " + std::to_string(ch.gains.size()) + " gains for a " +
                                          std::to_string(ch.geometry.n1) + "x" + std::to_string(ch.geometry.n2) +
                                          " array");
}

// out(l, m) = scale * sum_{i,k} basis1(l, i) basis2(m, k) in(i, k), where the
// bases are conjugated for the inverse direction.
std::vector<cplx> separable_dft(const std::vector<cplx> &in, int n1, int n2, bool inverse) {
    const std::vector<cplx> b1 = dft_basis(n1, 1);
    const std::vector<cplx> b2 = dft_basis(n2, 1);
    auto basis = [inverse](const std::vector<cplx> &b, std::size_t idx) { return inverse ? std::conj(b[idx]) : b[idx]; };
    std::vector<cplx> partial(in.size());
    for (int l = 0; l < n1; ++l)
        for (int i = 0; i < n1; ++i) {
            const cplx c = basis(b1, static_cast<std::size_t>(l) * n1 + i);
            for (int k = 0; k < n2; ++k)
                partial[static_cast<std::size_t>(l) * n2 + k] += c * in[static_cast<std::size_t>(i) * n2 + k];
        }
    std::vector<cplx> out(in.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n1) * n2);
    for (int l = 0; l < n1; ++l)
        for (int m = 0; m < n2; ++m) {
            cplx acc{};
            for (int k = 0; k < n2; ++k)
                acc += partial[static_cast<std::size_t>(l) * n2 + k] * basis(b2, static_cast<std::size_t>(m) * n2 + k);
            out[static_cast<std::size_t>(l) * n2 + m] = acc * scale;
        }
    return out;
}

} // namespace

std::vector<cplx> spatial_spectrum(const ChannelVector &ch) {
    check_shape(ch);
    return separable_dft(ch.gains, ch.geometry.n1, ch.geometry.n2, false);
}

ChannelVector from_spatial_spectrum(const ArrayGeometry &geometry, const std::vector<cplx> &spectrum) {
    geometry.validate();
    if (spectrum.size() != geometry.antennas()) throw Error(ErrorCode::shape, "spectrum size does not match the array");
    return {geometry, separable_dft(spectrum, geometry.n1, geometry.n2, true)};
}

ChannelVector filter_evanescent(const ChannelVector &ch, double alpha1, double alpha2,
                                const std::optional<std::vector<bool>> &override_mask) {
    check_shape(ch);
    const CodebookConfig cfg{ch.geometry.n1, ch.geometry.n2, 1, 1};
    std::vector<cplx> spec = spatial_spectrum(ch);
    if (override_mask) {
        if (override_mask->size() != spec.size())
            throw Error(ErrorCode::shape, "override mask must have n1*n2 entries");
        for (std::size_t i = 0; i < spec.size(); ++i)
            if ((*override_mask)[i]) spec[i] = 0.0;
    } else {
        const EvanescentMask mask(cfg, alpha1, alpha2);
        for (int l = 0; l < cfg.n1; ++l)
            for (int m = 0; m < cfg.n2; ++m)
                if (mask.flag({l, m})) spec[static_cast<std::size_t>(l) * cfg.n2 + m] = 0.0;
    }
    return from_spatial_spectrum(ch.geometry, spec);
}

FilteredBatch filter_batch(const RayleighConfig &cfg) {
    FilteredBatch batch;
    batch.before = generate_rayleigh(cfg);
    batch.after.reserve(batch.before.size());
    batch.removed_fraction.reserve(batch.before.size());
    for (const ChannelVector &ch : batch.before) {
        ChannelVector out = filter_evanescent(ch, cfg.alpha1, cfg.alpha2);
        double total = 0.0, removed = 0.0;
        for (std::size_t i = 0; i < ch.gains.size(); ++i) {
            total += std::norm(ch.gains[i]);
            removed += std::norm(ch.gains[i] - out.gains[i]);
        }
        batch.removed_fraction.push_back(total > 0.0 ? removed / total : 0.0);
        batch.after.push_back(std::move(out));
    }
    const std::size_t n = batch.removed_fraction.size();
    if (n > 0) {
        double sum = 0.0;
        for (double f : batch.removed_fraction) sum += f;
        batch.removed_mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (double f : batch.removed_fraction) ss += (f - batch.removed_mean) * (f - batch.removed_mean);
        batch.removed_std = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    }
    return batch;
}

} // namespace evcb
