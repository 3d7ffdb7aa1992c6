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

#include "evcb/pattern.hpp"

#include "evcb/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace evcb {

namespace {

constexpr double kFloorDbw = -400.0;

int steps_in(double span_deg, double step_deg, const char *what) {
    if (!(step_deg > 0.0)) throw Error(ErrorCode::invalid_argument, std::string(what) + " step must be positive");
    const double n = span_deg / step_deg;
    const double r = std::round(n);
    if (r < 1.0 || std::abs(n - r) > 1e-9)
        throw Error(ErrorCode::invalid_argument, std::string(what) + " step must divide " +
                                                     std::to_string(static_cast<int>(span_deg)) + " degrees");
    return static_cast<int>(r);
}

double resolve_radius(const ArrayGeometry &g, const PatternOptions &opt) {
    const double r = opt.radius > 0.0 ? opt.radius : default_radius(g);
    if (opt.radius < 0.0) throw Error(ErrorCode::invalid_argument, "radius must be positive");
    const double outer = fresnel_range(g.max_aperture(), g.wavelength).outer;
    if (!opt.allow_near_field && r < outer)
        throw Error(ErrorCode::domain, "radius " + std::to_string(r) + " m is inside the far-field bound " +
                                           std::to_string(outer) + " m");
    return r;
}

struct Point {
    double x, y, z;
};

// Observation point on the sphere about the array centroid; centring removes
// the corner-origin parallax, which otherwise skews sidelobe slopes by a few
// percent even at 10x the far-field bound.
Point sphere_point(const ArrayGeometry &g, double radius, double theta, double phi) {
    const double st = std::sin(theta);
    return {0.5 * (g.n1 - 1) * g.d1 + radius * st * std::cos(phi), 0.5 * (g.n2 - 1) * g.d2 + radius * st * std::sin(phi),
            radius * std::cos(theta)};
}

} // namespace

double to_dbw(double watts) { return watts > 0.0 ? std::max(10.0 * std::log10(watts), kFloorDbw) : kFloorDbw; }

double default_radius(const ArrayGeometry &geometry) {
    geometry.validate();
    const double outer = fresnel_range(geometry.max_aperture(), geometry.wavelength).outer;
    return 10.0 * std::max(outer, geometry.wavelength);
}

double PatternGrid::mean_power() const {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double w = std::sin(deg2rad(theta_deg(i)));
        if (i == 0 || i == n_theta - 1) w *= 0.5;
        for (int j = 0; j < n_phi; ++j) {
            num += w * at(i, j);
            den += w;
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

PatternSynthesizer::PatternSynthesizer(const ArrayGeometry &geometry, const PatternOptions &options)
    : geometry_(geometry), options_(options) {
    geometry_.validate();
    n_theta_ = steps_in(90.0, options.theta_step_deg, "theta") + 1;
    n_phi_ = steps_in(360.0, options.phi_step_deg, "phi");
    radius_ = resolve_radius(geometry_, options);

    const double lambda = geometry_.wavelength;
    const double k = geometry_.wavenumber();
    const std::size_t ne = geometry_.antennas();
    scale_ = (lambda * lambda / 4.0) * (1.0 / static_cast<double>(ne)) / kTwoPi;

    const std::size_t points = static_cast<std::size_t>(n_theta_) * n_phi_;
    kernel_re_.resize(points * ne);
    kernel_im_.resize(points * ne);
    for (int i = 0; i < n_theta_; ++i) {
        const double theta = deg2rad(i * options.theta_step_deg);
        for (int j = 0; j < n_phi_; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * n_phi_ + j;
            double *re = &kernel_re_[p * ne];
            double *im = &kernel_im_[p * ne];
            if (i == 0 && j > 0) { // the pole is one point
                std::copy_n(&kernel_re_[0], ne, re);
                std::copy_n(&kernel_im_[0], ne, im);
                continue;
            }
            const Point q = sphere_point(geometry_, radius_, theta, deg2rad(j * options.phi_step_deg));
            std::size_t e = 0;
            for (int a = 0; a < geometry_.n1; ++a)
                for (int b = 0; b < geometry_.n2; ++b, ++e) {
                    const double dx = a * geometry_.d1 - q.x;
                    const double dy = b * geometry_.d2 - q.y;
                    const double dist = std::sqrt(dx * dx + dy * dy + q.z * q.z);
                    const double amp = 1.0 / dist;
                    re[e] = amp * std::cos(k * dist);
                    im[e] = amp * std::sin(k * dist);
                }
        }
    }
}

PatternGrid PatternSynthesizer::synthesize(std::span<const cplx> precoding) const {
    const std::size_t ne = geometry_.antennas();
    if (precoding.size() != ne)
        throw Error(ErrorCode::shape, "precoding has " + std::to_string(precoding.size()) + " entries, array has " +
                                          std::to_string(ne));
    std::vector<double> wr(ne), wi(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        wr[e] = precoding[e].real();
        wi[e] = precoding[e].imag();
    }

    PatternGrid grid;
    grid.theta_step_deg = options_.theta_step_deg;
    grid.phi_step_deg = options_.phi_step_deg;
    grid.n_theta = n_theta_;
    grid.n_phi = n_phi_;
    grid.radius = radius_;
    const std::size_t points = static_cast<std::size_t>(n_theta_) * n_phi_;
    grid.power.resize(points);
    for (std::size_t p = 0; p < points; ++p) {
        const double *re = &kernel_re_[p * ne];
        const double *im = &kernel_im_[p * ne];
        double sr = 0.0, si = 0.0;
        for (std::size_t e = 0; e < ne; ++e) {
            sr += re[e] * wr[e] - im[e] * wi[e];
            si += re[e] * wi[e] + im[e] * wr[e];
        }
        grid.power[p] = scale_ * (sr * sr + si * si);
    }
    return grid;
}

double PatternSynthesizer::power_at(std::span<const cplx> precoding, Direction dir) const {
    const std::size_t ne = geometry_.antennas();
    if (precoding.size() != ne) throw Error(ErrorCode::shape, "precoding length does not match the array");
    const double k = geometry_.wavenumber();
    const Point q = sphere_point(geometry_, radius_, dir.theta, dir.phi);
    cplx acc{};
    std::size_t e = 0;
    for (int a = 0; a < geometry_.n1; ++a)
        for (int b = 0; b < geometry_.n2; ++b, ++e) {
            const double dx = a * geometry_.d1 - q.x;
            const double dy = b * geometry_.d2 - q.y;
            const double dist = std::sqrt(dx * dx + dy * dy + q.z * q.z);
            acc += std::polar(1.0 / dist, k * dist) * precoding[e];
        }
    return scale_ * std::norm(acc);
}

PatternGrid synthesize_pattern(const ArrayGeometry &geometry, std::span<const cplx> precoding,
                               const PatternOptions &options) {
    geometry.validate();
    if (precoding.size() != geometry.antennas())
        throw Error(ErrorCode::shape, "precoding has " + std::to_string(precoding.size()) + " entries, array has " +
                                          std::to_string(geometry.antennas()));
    return PatternSynthesizer(geometry, options).synthesize(precoding);
}

// ---------------------------------------------------------------------------
// Lobe analysis
//
// Nodes: 0 is the pole (theta = 0, every phi is the same point); node
// 1 + (i-1)*n_phi + j is sample (i, j) for i >= 1. Prominence comes from a
// descending sweep with union-find: when two basins meet at a saddle, the
// lower peak's prominence is its height above that saddle.

namespace {

class LobeGraph {
public:
    explicit LobeGraph(const PatternGrid &g) : g_(g), count_(1 + static_cast<std::size_t>(g.n_theta - 1) * g.n_phi) {}

    std::size_t size() const { return count_; }

    double db(std::size_t node) const {
        auto [i, j] = cell(node);
        return to_dbw(g_.at(i, j));
    }

    std::pair<int, int> cell(std::size_t node) const {
        if (node == 0) return {0, 0};
        const std::size_t r = node - 1;
        return {1 + static_cast<int>(r / g_.n_phi), static_cast<int>(r % g_.n_phi)};
    }

    std::size_t node(int i, int j) const {
        if (i == 0) return 0;
        return 1 + static_cast<std::size_t>(i - 1) * g_.n_phi + static_cast<std::size_t>((j % g_.n_phi + g_.n_phi) % g_.n_phi);
    }

    template <typename F> void neighbours(std::size_t n, F &&f) const {
        if (n == 0) {
            if (g_.n_theta > 1)
                for (int j = 0; j < g_.n_phi; ++j) f(node(1, j));
            return;
        }
        auto [i, j] = cell(n);
        for (int di = -1; di <= 1; ++di) {
            const int ii = i + di;
            if (ii < 0 || ii >= g_.n_theta) continue;
            if (ii == 0) {
                f(std::size_t{0});
                continue;
            }
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                f(node(ii, j + dj));
            }
        }
    }

private:
    const PatternGrid &g_;
    std::size_t count_;
};

struct DisjointSet {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> peak; // highest node of each set (valid at roots)
    explicit DisjointSet(std::size_t n) : parent(n), peak(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::iota(peak.begin(), peak.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
};

double parabolic_offset(double left, double centre, double right) {
    const double den = left - 2.0 * centre + right;
    if (!(den < 0.0)) return 0.0;
    return std::clamp(0.5 * (left - right) / den, -0.5, 0.5);
}

Direction grid_direction(const PatternGrid &g, int i, int j) {
    return {deg2rad(g.theta_deg(i)), i == 0 ? 0.0 : deg2rad(g.phi_deg(j))};
}

} // namespace

std::size_t LobeReport::count_lobes(double within_db, double phi_min_deg, double phi_max_deg) const {
    std::size_t n = 0;
    for (const Lobe &l : lobes) {
        const double phi = rad2deg(l.direction.phi);
        if (l.power_dbw >= peak_power_dbw - within_db && phi >= phi_min_deg && phi <= phi_max_deg) ++n;
    }
    return n;
}

LobeReport analyze_lobes(const PatternGrid &pattern, const LobeCriteria &criteria) {
    if (pattern.power.empty() || pattern.n_theta < 1 || pattern.n_phi < 1)
        throw Error(ErrorCode::invalid_argument, "empty pattern");

    const LobeGraph graph(pattern);
    const std::size_t n = graph.size();
    std::vector<double> level(n);
    for (std::size_t v = 0; v < n; ++v) level[v] = graph.db(v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return level[a] > level[b]; });

    DisjointSet sets(n);
    std::vector<char> active(n, 0);
    std::vector<Lobe> found;
    auto record = [&](std::size_t peak_node, double prominence) {
        if (prominence < criteria.prominence_db) return;
        auto [i, j] = graph.cell(peak_node);
        found.push_back({grid_direction(pattern, i, j), level[peak_node], prominence});
    };

    std::vector<std::size_t> roots;
    for (std::size_t v : order) {
        active[v] = 1;
        roots.clear();
        graph.neighbours(v, [&](std::size_t u) {
            if (!active[u]) return;
            const std::size_t r = sets.find(u);
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        });
        if (roots.empty()) continue; // new local maximum
        std::size_t top = roots.front();
        for (std::size_t r : roots)
            if (level[sets.peak[r]] > level[sets.peak[top]]) top = r;
        for (std::size_t r : roots) {
            if (r == top) continue;
            record(sets.peak[r], level[sets.peak[r]] - level[v]);
            sets.parent[r] = top;
        }
        sets.parent[v] = top;
    }
    const double floor = level[order.back()];
    const std::size_t global = sets.peak[sets.find(order.front())];
    record(global, std::max(level[global] - floor, criteria.prominence_db));

    std::stable_sort(found.begin(), found.end(),
                     [](const Lobe &a, const Lobe &b) { return a.power_dbw > b.power_dbw; });

    LobeReport report;
    report.lobes = std::move(found);

    auto [pi, pj] = graph.cell(global);
    report.peak_power_dbw = level[global];
    Direction peak = grid_direction(pattern, pi, pj);
    if (pi > 0) {
        if (pi + 1 < pattern.n_theta) {
            const double off = parabolic_offset(to_dbw(pattern.at(pi - 1, pj)), level[global],
                                                to_dbw(pattern.at(pi + 1, pj)));
            peak.theta = deg2rad(pattern.theta_deg(pi) + off * pattern.theta_step_deg);
        }
        const int jl = (pj - 1 + pattern.n_phi) % pattern.n_phi;
        const int jr = (pj + 1) % pattern.n_phi;
        const double off = parabolic_offset(to_dbw(pattern.at(pi, jl)), level[global], to_dbw(pattern.at(pi, jr)));
        double phi = pattern.phi_deg(pj) + off * pattern.phi_step_deg;
        if (phi < 0.0) phi += 360.0;
        if (phi >= 360.0) phi -= 360.0;
        peak.phi = deg2rad(phi);
    }
    report.peak_direction = peak;
    report.mean_power_dbw = to_dbw(pattern.mean_power());
    report.gain_db = report.peak_power_dbw - report.mean_power_dbw;
    report.directional = report.gain_db >= criteria.directional_margin_db &&
                         rad2deg(report.peak_direction.theta) < criteria.max_theta_deg;
    return report;
}

std::vector<InterpolationRun> interpolation_experiment(const CodebookConfig &cfg, CodewordIndex idx,
                                                       const std::vector<double> &dense_alphas,
                                                       double reference_alpha, const PatternOptions &options,
                                                       const LobeCriteria &criteria) {
    check_index(cfg, idx);
    const double wavelength = 1.0;
    const ArrayGeometry reference = ArrayGeometry::from_alpha(cfg.n1, cfg.n2, reference_alpha, reference_alpha, wavelength);
    const CodewordWavenumbers grad =
        codeword_wavenumbers(cfg, idx, reference_alpha, reference_alpha, reference.wavenumber());

    PatternOptions shared = options;
    if (shared.radius <= 0.0) {
        double r = default_radius(reference);
        for (double a : dense_alphas)
            r = std::max(r, default_radius(ArrayGeometry::from_alpha(cfg.n1, cfg.n2, a, a, wavelength)));
        shared.radius = r;
    }

    std::vector<InterpolationRun> runs;
    runs.reserve(dense_alphas.size());
    for (double a : dense_alphas) {
        const ArrayGeometry g = ArrayGeometry::from_alpha(cfg.n1, cfg.n2, a, a, wavelength);
        const ChannelVector w = steering_from_wavenumbers(g, grad.kx, grad.ky);
        runs.push_back({a, g, analyze_lobes(synthesize_pattern(g, w.gains, shared), criteria)});
    }
    return runs;
}

} // namespace evcb
