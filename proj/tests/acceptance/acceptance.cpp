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
//
// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exit status is nonzero when any criterion fails.

#include "evcb/classifier.hpp"
#include "evcb/codebook.hpp"
#include "evcb/geometry.hpp"
#include "evcb/linksim.hpp"
#include "evcb/pattern.hpp"
#include "evcb/rayleigh.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

using namespace evcb;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double angle_deg(Direction a, Direction b) {
    const double c = std::sin(a.theta) * std::sin(b.theta) * std::cos(a.phi - b.phi) +
                     std::cos(a.theta) * std::cos(b.theta);
    return rad2deg(std::acos(std::clamp(c, -1.0, 1.0)));
}

double peak_of(const PatternGrid &p) { return *std::max_element(p.power.begin(), p.power.end()); }

double norm2(const std::vector<cplx> &v) {
    double s = 0.0;
    for (const cplx &z : v) s += std::norm(z);
    return s;
}

const CodebookConfig kCb{8, 8, 4, 4};
const ArrayGeometry kHalf{8, 8, 0.5, 0.5, 1.0};

Verdict table_counts() {
    Verdict v;
    const double fc = 1e10, d = 0.5 * kSpeedOfLight / fc;
    const std::vector<double> offsets{0.0, 10e6, 100e6, 500e6, 1e9};
    const std::size_t want[] = {229, 229, 205, 161, 117};
    const double want_pct[] = {22.36, 22.36, 20.02, 15.72, 11.43};
    const auto rows = wideband_masks(kCb, d, d, fc, offsets);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double pct = 100.0 * rows[i].stats.redundancy;
        v.require(rows[i].stats.evanescent == want[i] && std::abs(pct - want_pct[i]) <= 0.01 + 1e-9,
                  std::to_string(rows[i].stats.evanescent) + "/" + fmt("%.2f%%", pct));
    }
    return v;
}

Verdict beam_and_peak() {
    Verdict v;
    const auto dir = beam_direction(kCb, {4, 10}, 0.5, 0.5);
    if (!dir) {
        v.require(false, "v(4,10) marked evanescent");
        return v;
    }
    const double th = rad2deg(dir->theta), ph = rad2deg(dir->phi);
    v.require(std::abs(th - 42.3) < 0.05 && std::abs(ph - 68.2) < 0.05,
              "analytic (" + fmt("%.3f", th) + ", " + fmt("%.3f", ph) + ") deg");
    const auto t0 = std::chrono::steady_clock::now();
    const PatternGrid p = synthesize_pattern(kHalf, generate_codeword(kCb, {4, 10}).entries);
    const LobeReport r = analyze_lobes(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double off = angle_deg(r.peak_direction, *dir);
    v.require(off < 1.0, "pattern peak off by " + fmt("%.3f", off) + " deg");
    v.require(secs < 5.0, "0.5 deg pattern in " + fmt("%.2f", secs) + " s");
    return v;
}

Verdict evanescent_not_directional() {
    Verdict v;
    const PatternSynthesizer synth(kHalf);
    const LobeReport r = analyze_lobes(synth.synthesize(generate_codeword(kCb, {14, 16}).entries));
    v.require(!r.directional, "v(14,16) gain " + fmt("%.2f", r.gain_db) + " dB, directional=" +
                                  (r.directional ? "true" : "false"));
    const EvanescentMask mask(kCb, 0.5, 0.5);
    double best_regular = 0.0, worst_evanescent = 0.0;
    for (int l = 0; l < kCb.grid1(); ++l)
        for (int m = 0; m < kCb.grid2(); ++m) {
            const double pk = peak_of(synth.synthesize(generate_codeword(kCb, {l, m}).entries));
            double &slot = mask.flag({l, m}) ? worst_evanescent : best_regular;
            slot = std::max(slot, pk);
        }
    v.require(worst_evanescent < best_regular, "max evanescent peak " +
                                                   fmt("%.4f", to_dbw(best_regular) - to_dbw(worst_evanescent)) +
                                                   " dB below best regular peak");
    return v;
}

Verdict rim_beams() {
    Verdict v;
    const double k = kHalf.wavenumber();
    PatternOptions o;
    o.theta_step_deg = o.phi_step_deg = 1.0;
    const LobeReport r1 = analyze_lobes(synthesize_pattern(kHalf, steering_from_wavenumbers(kHalf, k, 0.0).gains, o));
    if (r1.lobes.size() < 2) {
        v.require(false, "w1 has " + std::to_string(r1.lobes.size()) + " lobe(s)");
    } else {
        const Lobe &a = r1.lobes[0], &b = r1.lobes[1];
        const double gap = std::abs(a.power_dbw - b.power_dbw);
        const double pa = rad2deg(a.direction.phi), pb = rad2deg(b.direction.phi);
        const bool placed = rad2deg(a.direction.theta) == 90.0 && rad2deg(b.direction.theta) == 90.0 &&
                            std::min(pa, pb) == 0.0 && std::max(pa, pb) == 180.0;
        v.require(gap <= 0.2 && placed && r1.count_lobes(3.0) == 2,
                  "w1 lobes at phi " + fmt("%.0f", pa) + "/" + fmt("%.0f", pb) + ", gap " + fmt("%.3f", gap) +
                      " dB");
    }
    const double c = std::sqrt(0.5) * k;
    const LobeReport r2 = analyze_lobes(synthesize_pattern(kHalf, steering_from_wavenumbers(kHalf, c, c).gains, o));
    const double off = angle_deg(r2.peak_direction, {deg2rad(90.0), deg2rad(45.0)});
    v.require(r2.count_lobes(3.0) == 1 && off < 1.0,
              "w2 " + std::to_string(r2.count_lobes(3.0)) + " lobe, " + fmt("%.2f", off) + " deg from (90,45)");
    const NyquistLimits ny = nyquist_limits(kHalf);
    const double ratio = ny.supported_k(deg2rad(45.0)) / ny.supported_k(0.0);
    v.require(std::abs(ratio - std::sqrt(2.0)) < 1e-12, "supported_k ratio " + fmt("%.15f", ratio));
    return v;
}

Verdict interpolation() {
    Verdict v;
    PatternOptions o;
    o.theta_step_deg = o.phi_step_deg = 1.0;
    const auto runs = interpolation_experiment(kCb, {14, 16}, {0.5, 0.4, 0.25}, 0.5, o);
    const std::size_t g50 = runs[0].report.count_lobes(10.0, 180.0, 270.0);
    const std::size_t g40 = runs[1].report.count_lobes(10.0, 180.0, 270.0);
    v.require(g50 > 0, "alpha 0.5: " + std::to_string(g50) + " lobe(s) in phi 180..270");
    v.require(g40 == 0, "alpha 0.4: " + std::to_string(g40));
    const double dg = runs[2].report.gain_db - runs[1].report.gain_db;
    v.require(std::abs(dg) <= 1.0, "gain 0.25 vs 0.4: " + fmt("%+.2f", dg) + " dB");
    return v;
}

Verdict near_field_gradients_suite() {
    Verdict v;
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> n(2, 32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = 1.0, k = kTwoPi / lambda, h = 1e-4 * lambda;
    std::size_t kt_viol = 0;
    double fd_err = 0.0, far_err = 0.0;
    const int pairs = 20000;
    for (int i = 0; i < pairs; ++i) {
        const ArrayGeometry g = ArrayGeometry::from_alpha(n(rng), n(rng), 0.5, 0.5, lambda);
        const FresnelRange fr = fresnel_range(g.max_aperture(), lambda);
        const double theta = std::acos(u(rng)), phi = kTwoPi * u(rng);
        const SphericalPoint f{fr.inner + (fr.outer - fr.inner) * u(rng), theta, phi};
        const double x = std::floor(u(rng) * g.n1) * g.d1, y = std::floor(u(rng) * g.n2) * g.d2;
        const LocalWavenumbers w = near_field_gradients(k, f, x, y);
        if (!(w.kt <= k)) ++kt_viol;
        const double fdx = -k * (focus_distance(f, x + h, y) - focus_distance(f, x - h, y)) / (2 * h);
        const double fdy = -k * (focus_distance(f, x, y + h) - focus_distance(f, x, y - h)) / (2 * h);
        fd_err = std::max({fd_err, std::abs(w.kx - fdx), std::abs(w.ky - fdy)});

        const SphericalPoint far{1e6 * lambda, theta, phi};
        const LocalWavenumbers wf = near_field_gradients(k, far, x, y);
        const WaveVector pw = wave_vector(k, {theta, phi});
        far_err = std::max({far_err, std::abs(wf.kx - pw.kx), std::abs(wf.ky - pw.ky)});
    }
    v.require(kt_viol == 0, std::to_string(pairs) + " pairs, kt>k " + std::to_string(kt_viol));
    v.require(fd_err < 1e-6 * k, "FD error " + fmt("%.2e", fd_err / k) + " k");
    v.require(far_err < 1e-3 * k, "far-limit error " + fmt("%.2e", far_err / k) + " k");
    return v;
}

Verdict asymptotics() {
    Verdict v;
    const double limit = 1.0 - kPi / 4.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int o : {4, 16, 64}) {
        const double red = redundancy_stats(build_mask({8, 8, o, o}, 0.5, 0.5)).redundancy;
        const double err = std::abs(red - limit);
        v.require(err < prev, "O=" + std::to_string(o) + " " + fmt("%.3f%%", 100 * red));
        prev = err;
    }
    v.require(prev < 0.005, "final error " + fmt("%.3f", 100 * prev) + " pp");
    return v;
}

Verdict rayleigh() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    RayleighConfig small{8, 8, 0.5, 0.5, 11, 200};
    double idem = 0.0, ortho = 0.0, split = 0.0;
    for (const ChannelVector &h : generate_rayleigh(small)) {
        const ChannelVector f = filter_evanescent(h, 0.5, 0.5);
        const ChannelVector ff = filter_evanescent(f, 0.5, 0.5);
        const double e = norm2(h.gains);
        cplx inner = 0.0;
        std::vector<cplx> removed(h.gains.size());
        for (std::size_t i = 0; i < removed.size(); ++i) {
            removed[i] = h.gains[i] - f.gains[i];
            inner += std::conj(removed[i]) * f.gains[i];
            idem = std::max(idem, std::abs(ff.gains[i] - f.gains[i]));
        }
        ortho = std::max(ortho, std::abs(inner) / e);
        split = std::max(split, std::abs(norm2(f.gains) + norm2(removed) - e) / e);
    }
    v.require(idem < 1e-9 && ortho < 1e-9 && split < 1e-9,
              "idempotence " + fmt("%.1e", idem) + ", orthogonality " + fmt("%.1e", ortho) + ", energy split " +
                  fmt("%.1e", split));

    const double zone = static_cast<double>(build_mask({8, 8, 1, 1}, 0.5, 0.5).count_evanescent()) / 64.0;
    const FilteredBatch b = filter_batch({8, 8, 0.5, 0.5, 7, 10000});
    const double rel = std::abs(b.removed_mean - zone) / zone;
    v.require(rel < 0.01, "removed " + fmt("%.4f", b.removed_mean) + " vs zone " + fmt("%.4f", zone) + " (" +
                              fmt("%.2f", 100 * rel) + "%)");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < 30.0, fmt("%.2f", secs) + " s");
    return v;
}

Verdict link_sim() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const double inf = std::numeric_limits<double>::infinity();
    SimConfig s;
    s.snr_db_list = {inf, -10.0, 0.0, 10.0, 20.0};
    s.drops = 10000;
    s.seed = 42;
    const auto open = run_drops(s);
    s.restrict_evanescent = true;
    const auto restricted = run_drops(s);

    v.require(open[0].evanescent_selections == 0,
              "noiseless fraction " + fmt("%.4f", open[0].evanescent_fraction));
    bool monotone = true;
    std::string fr;
    for (std::size_t i = 1; i < open.size(); ++i) {
        fr += (i > 1 ? "/" : "") + fmt("%.4f", open[i].evanescent_fraction);
        if (i + 1 < open.size()) {
            const double p = open[i].evanescent_fraction, q = open[i + 1].evanescent_fraction;
            const double sigma = std::sqrt((p * (1 - p) + q * (1 - q)) / static_cast<double>(s.drops));
            monotone = monotone && q <= p + 3.0 * sigma;
        }
    }
    v.require(monotone, "fractions " + fr);
    double worst = 0.0;
    std::string gaps;
    for (std::size_t i = 1; i < open.size(); ++i) {
        const double rel = std::abs(restricted[i].throughput_proxy - open[i].throughput_proxy) / open[i].throughput_proxy;
        worst = std::max(worst, rel);
        gaps += (i > 1 ? "/" : "") + fmt("%.2f", 100 * rel);
    }
    v.require(worst < 0.01, "throughput gap " + gaps + " %");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < 120.0, fmt("%.1f", secs) + " s");
    return v;
}

Verdict equivalence() {
    Verdict v;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> n(1, 64), o(1, 16);
    std::uniform_real_distribution<double> a(0.05, 1.2);
    std::size_t disagreements = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        const CodebookConfig cfg{n(rng), n(rng), o(rng), o(rng)};
        const double a1 = a(rng), a2 = a(rng);
        const CodewordIndex idx{std::uniform_int_distribution<int>(0, cfg.grid1() - 1)(rng),
                                std::uniform_int_distribution<int>(0, cfg.grid2() - 1)(rng)};
        const bool e1 = is_evanescent(cfg, idx, a1, a2);
        const bool e2 = codeword_wavenumbers(cfg, idx, a1, a2, kTwoPi).evanescent();
        const bool e3 = !beam_direction(cfg, idx, a1, a2).has_value();
        if (e1 != e2 || e1 != e3) ++disagreements;
    }
    v.require(disagreements == 0, std::to_string(trials) + " triples, " + std::to_string(disagreements) +
                                      " disagreements");
    return v;
}

} // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Verdict()> run;
        double budget_s;
    };
    const Criterion criteria[] = {
        {"wideband mask counts", table_counts, 1.0},
        {"beam direction of v(4,10)", beam_and_peak, 0.0},
        {"evanescent codewords are not directional", evanescent_not_directional, 600.0},
        {"rim beams and diagonal Nyquist limit", rim_beams, 0.0},
        {"denser arrays do not add gain", interpolation, 0.0},
        {"near-field gradients", near_field_gradients_suite, 0.0},
        {"redundancy asymptotics", asymptotics, 0.0},
        {"Rayleigh evanescent filter", rayleigh, 0.0},
        {"link-level selection", link_sim, 0.0},
        {"classifier equivalence", equivalence, 0.0},
    };
    int failed = 0, i = 0;
    for (const Criterion &c : criteria) {
        ++i;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0) v.require(secs < c.budget_s, "budget " + fmt("%.0f", c.budget_s) + " s");
        if (!v.pass) ++failed;
        std::printf("%s %d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", i, c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", i - failed, i);
    return failed == 0 ? 0 : 1;
}
