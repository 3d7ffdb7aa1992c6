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

#include "evcb/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace evcb {

namespace {

void check_alpha(double alpha1, double alpha2) {
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !std::isfinite(alpha1) || !std::isfinite(alpha2))
        throw Error(ErrorCode::invalid_argument, "normalized spacings must be positive and finite");
}

bool above_unit(double q) { return q > 1.0 + kBoundaryTolerance; }
bool near_unit(double q) { return std::abs(q - 1.0) <= kBoundaryTolerance; }

struct Normalized {
    double x;
    double y;
};

Normalized normalized_frequency(const CodebookConfig &cfg, CodewordIndex idx, double alpha1, double alpha2) {
    const ShiftedIndex s = shift_index(cfg, idx);
    return {s.l / (alpha1 * cfg.grid1()), s.m / (alpha2 * cfg.grid2())};
}

} // namespace

double ellipse_value(const CodebookConfig &cfg, CodewordIndex idx, double alpha1, double alpha2) {
    check_alpha(alpha1, alpha2);
    const Normalized f = normalized_frequency(cfg, idx, alpha1, alpha2);
    return f.x * f.x + f.y * f.y;
}

bool is_evanescent(const CodebookConfig &cfg, CodewordIndex idx, double alpha1, double alpha2) {
    return above_unit(ellipse_value(cfg, idx, alpha1, alpha2));
}

EvanescentMask::EvanescentMask(CodebookConfig cfg, double alpha1, double alpha2)
    : cfg_(cfg), alpha1_(alpha1), alpha2_(alpha2) {
    cfg_.validate();
    check_alpha(alpha1, alpha2);
    flags_.assign(cfg_.cardinality(), 0);
    for (int l = 0; l < cfg_.grid1(); ++l)
        for (int m = 0; m < cfg_.grid2(); ++m) {
            const double q = ellipse_value(cfg_, {l, m}, alpha1, alpha2);
            flags_[static_cast<std::size_t>(l) * cfg_.grid2() + m] = above_unit(q) ? 1 : 0;
            if (near_unit(q)) ++boundary_;
        }
}

bool EvanescentMask::flag(CodewordIndex idx) const {
    check_index(cfg_, idx);
    return flags_[static_cast<std::size_t>(idx.l) * cfg_.grid2() + idx.m] != 0;
}

bool EvanescentMask::flag_shifted(ShiftedIndex s) const { return flag(unshift_index(cfg_, s)); }

std::size_t EvanescentMask::count_evanescent() const {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

bool EvanescentMask::operator==(const EvanescentMask &other) const {
    return cfg_.n1 == other.cfg_.n1 && cfg_.n2 == other.cfg_.n2 && cfg_.o1 == other.cfg_.o1 &&
           cfg_.o2 == other.cfg_.o2 && flags_ == other.flags_;
}

EvanescentMask build_mask(const CodebookConfig &cfg, double alpha1, double alpha2) {
    return EvanescentMask(cfg, alpha1, alpha2);
}

ZoneStats redundancy_stats(const EvanescentMask &mask) {
    ZoneStats s;
    s.total = mask.size();
    s.evanescent = mask.count_evanescent();
    s.redundancy = s.total == 0 ? 0.0 : static_cast<double>(s.evanescent) / static_cast<double>(s.total);
    return s;
}

std::optional<Direction> beam_direction(const CodebookConfig &cfg, CodewordIndex idx, double alpha1,
                                        double alpha2) {
    check_alpha(alpha1, alpha2);
    const Normalized f = normalized_frequency(cfg, idx, alpha1, alpha2);
    const double s2 = f.x * f.x + f.y * f.y;
    if (above_unit(s2)) return std::nullopt;
    Direction d;
    d.theta = std::asin(std::sqrt(std::min(s2, 1.0)));
    if (f.x == 0.0 && f.y == 0.0) {
        d.phi = 0.0;
    } else {
        d.phi = std::atan2(f.y, f.x);
        if (d.phi < 0.0) d.phi += kTwoPi;
    }
    return d;
}

bool CodewordWavenumbers::evanescent() const { return kt * kt > k * k * (1.0 + kBoundaryTolerance); }

CodewordWavenumbers codeword_wavenumbers(const CodebookConfig &cfg, CodewordIndex idx, double alpha1,
                                         double alpha2, double k) {
    check_alpha(alpha1, alpha2);
    if (!(k > 0.0)) throw Error(ErrorCode::domain, "wavenumber must be positive");
    const ShiftedIndex s = shift_index(cfg, idx);
    CodewordWavenumbers w;
    w.k = k;
    w.kx = s.l * k / (alpha1 * cfg.grid1());
    w.ky = s.m * k / (alpha2 * cfg.grid2());
    w.kt = std::hypot(w.kx, w.ky);
    return w;
}

double NyquistLimits::supported_k(double phi) const {
    const double c = std::abs(std::cos(phi));
    const double s = std::abs(std::sin(phi));
    const double inf = std::numeric_limits<double>::infinity();
    const double tx = c > 0.0 ? ks_x / c : inf;
    const double ty = s > 0.0 ? ks_y / s : inf;
    return std::min(tx, ty);
}

NyquistLimits nyquist_limits(const ArrayGeometry &geometry) {
    geometry.validate();
    const double k = geometry.wavenumber();
    return {k / (2.0 * geometry.alpha1()), k / (2.0 * geometry.alpha2())};
}

bool is_nyquist_edge(const CodebookConfig &cfg, CodewordIndex idx) {
    check_index(cfg, idx);
    return 2 * idx.l == cfg.grid1() || 2 * idx.m == cfg.grid2();
}

std::vector<WidebandEntry> wideband_masks(const CodebookConfig &cfg, double d1, double d2, double fc,
                                          const std::vector<double> &offsets) {
    cfg.validate();
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error(ErrorCode::invalid_argument, "spacings must be positive");
    std::vector<WidebandEntry> out;
    out.reserve(offsets.size());
    for (double offset : offsets) {
        const double f = fc + offset;
        if (!(f > 0.0) || !std::isfinite(f))
            throw Error(ErrorCode::domain, "sub-carrier frequency must be positive (got " + std::to_string(f) + ")");
        const double a1 = d1 * f / kSpeedOfLight;
        const double a2 = d2 * f / kSpeedOfLight;
        EvanescentMask mask(cfg, a1, a2);
        const ZoneStats stats = redundancy_stats(mask);
        out.push_back({f, a1, a2, std::move(mask), stats});
    }
    return out;
}

CorrelationGrid project_channel(const CodebookConfig &cfg, const ChannelVector &ch) {
    cfg.validate();
    if (ch.geometry.n1 != cfg.n1 || ch.geometry.n2 != cfg.n2 || ch.gains.size() != cfg.antennas())
        throw Error(ErrorCode::shape, "channel is " + std::to_string(ch.geometry.n1) + "x" +
                                          std::to_string(ch.geometry.n2) + " with " +
                                          std::to_string(ch.gains.size()) + " gains, codebook expects " +
                                          std::to_string(cfg.n1) + "x" + std::to_string(cfg.n2));
    double h2 = 0.0;
    for (const cplx &g : ch.gains) h2 += std::norm(g);

    const int n1 = cfg.n1, n2 = cfg.n2, g1 = cfg.grid1(), g2 = cfg.grid2();
    const std::vector<cplx> bx = dft_basis(n1, cfg.o1);
    const std::vector<cplx> by = dft_basis(n2, cfg.o2);

    // Separable: A(l, k) = sum_i bx(l, i) h(i, k); C(l, m) = sum_k A(l, k) by(m, k).
    std::vector<cplx> partial(static_cast<std::size_t>(g1) * n2);
    for (int l = 0; l < g1; ++l)
        for (int i = 0; i < n1; ++i) {
            const cplx b = bx[static_cast<std::size_t>(l) * n1 + i];
            const cplx *row = &ch.gains[static_cast<std::size_t>(i) * n2];
            cplx *dst = &partial[static_cast<std::size_t>(l) * n2];
            for (int k = 0; k < n2; ++k) dst[k] += b * row[k];
        }

    CorrelationGrid grid{cfg, std::vector<double>(cfg.cardinality(), 0.0)};
    const double norm = h2 > 0.0 ? 1.0 / (static_cast<double>(cfg.antennas()) * h2) : 0.0;
    for (int l = 0; l < g1; ++l)
        for (int m = 0; m < g2; ++m) {
            cplx acc{};
            const cplx *a = &partial[static_cast<std::size_t>(l) * n2];
            const cplx *b = &by[static_cast<std::size_t>(m) * n2];
            for (int k = 0; k < n2; ++k) acc += a[k] * b[k];
            grid.values[static_cast<std::size_t>(l) * g2 + m] = std::norm(acc) * norm;
        }
    return grid;
}

std::vector<ZoneClass> zone_classes(const EvanescentMask &mask) {
    const CodebookConfig &cfg = mask.config();
    const int g1 = cfg.grid1(), g2 = cfg.grid2();
    std::vector<ZoneClass> out(mask.size(), ZoneClass::regular);
    for (int l = 0; l < g1; ++l)
        for (int m = 0; m < g2; ++m) {
            if (!mask.flag({l, m})) continue;
            bool touches_regular = false;
            for (int dl = -1; dl <= 1 && !touches_regular; ++dl)
                for (int dm = -1; dm <= 1; ++dm) {
                    const int ll = ((l + dl) % g1 + g1) % g1;
                    const int mm = ((m + dm) % g2 + g2) % g2;
                    if (!mask.flag({ll, mm})) {
                        touches_regular = true;
                        break;
                    }
                }
            out[static_cast<std::size_t>(l) * g2 + m] = touches_regular ? ZoneClass::boundary : ZoneClass::evanescent;
        }
    return out;
}

ZoneEnergy zone_energy(const CorrelationGrid &grid, const EvanescentMask &mask) {
    const CodebookConfig &a = grid.cfg;
    const CodebookConfig &b = mask.config();
    if (a.n1 != b.n1 || a.n2 != b.n2 || a.o1 != b.o1 || a.o2 != b.o2)
        throw Error(ErrorCode::shape, "correlation grid and mask use different codebooks");
    const std::vector<ZoneClass> zones = zone_classes(mask);
    ZoneEnergy e;
    double total = 0.0;
    for (std::size_t i = 0; i < zones.size(); ++i) {
        const double v = grid.values[i];
        total += v;
        switch (zones[i]) {
        case ZoneClass::regular: e.regular += v; break;
        case ZoneClass::boundary: e.boundary += v; break;
        case ZoneClass::evanescent: e.evanescent += v; break;
        }
    }
    if (total > 0.0) {
        e.regular /= total;
        e.boundary /= total;
        e.evanescent /= total;
    }
    return e;
}

} // namespace evcb
