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

#ifndef EVCB_PATTERN_HPP
#define EVCB_PATTERN_HPP

#include "evcb/codebook.hpp"
#include "evcb/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace evcb {

struct PatternOptions {
    double theta_step_deg = 0.5;
    double phi_step_deg = 0.5;
    // Observation radius in metres; 0 selects default_radius(geometry).
    double radius = 0.0;
    // Permit radii inside the far-field bound (near-field sweeps).
    bool allow_near_field = false;
};

// 10x the outer Fresnel bound, but never less than 10 wavelengths (a single
// antenna has zero aperture).
double default_radius(const ArrayGeometry &geometry);

// Received power on a hemisphere about the array centroid, theta in [0, 90]
// deg inclusive, phi in [0, 360) deg, stored theta-major.
struct PatternGrid {
    double theta_step_deg = 0.5;
    double phi_step_deg = 0.5;
    int n_theta = 0;
    int n_phi = 0;
    double radius = 0.0;
    std::vector<double> power; // W

    double theta_deg(int i) const { return i * theta_step_deg; }
    double phi_deg(int j) const { return j * phi_step_deg; }
    double at(int i, int j) const { return power[static_cast<std::size_t>(i) * n_phi + j]; }
    // Solid-angle weighted hemisphere mean (trapezoid in theta).
    double mean_power() const;
};

// Array synthesis with isotropic elements:
//   P(r') = S |sum_i sqrt(P_i F) / |r_i - r'| * exp(+jk|r_i - r'|) * w_i|^2,
// S = lambda^2/4, F = 1/(2 pi), P_i = 1/(n1 n2).
// The kernel's far-field limit is the los_channel phase law, so the matched
// precoding conj(h(d)) peaks at d.
//
// The synthesizer precomputes the per-element kernel for its grid, which makes
// repeated patterns on one geometry (e.g. a full codebook sweep) cheap.
class PatternSynthesizer {
public:
    PatternSynthesizer(const ArrayGeometry &geometry, const PatternOptions &options = {});

    PatternGrid synthesize(std::span<const cplx> precoding) const;
    // Received power at one direction on the synthesizer's sphere.
    double power_at(std::span<const cplx> precoding, Direction dir) const;

    const ArrayGeometry &geometry() const { return geometry_; }
    double radius() const { return radius_; }

private:
    ArrayGeometry geometry_;
    PatternOptions options_;
    double radius_;
    int n_theta_;
    int n_phi_;
    double scale_; // S * P_i * F
    std::vector<double> kernel_re_;
    std::vector<double> kernel_im_;
};

// One-shot synthesis. Errors: precoding length != n1*n2 -> shape error;
// radius below the outer Fresnel bound without allow_near_field -> domain error.
PatternGrid synthesize_pattern(const ArrayGeometry &geometry, std::span<const cplx> precoding,
                               const PatternOptions &options = {});

struct Lobe {
    Direction direction;
    double power_dbw = 0.0;
    double prominence_db = 0.0;
};

struct LobeCriteria {
    double prominence_db = 3.0;
    // "directional" needs the peak this far above the hemisphere mean ...
    double directional_margin_db = 10.0;
    // ... and below this elevation.
    double max_theta_deg = 85.0;
};

struct LobeReport {
    Direction peak_direction; // sub-grid refined
    double peak_power_dbw = 0.0;
    double mean_power_dbw = 0.0;
    double gain_db = 0.0; // peak over hemisphere mean
    std::vector<Lobe> lobes; // by power, descending
    bool directional = false;

    // Lobes within `within_db` of the peak whose azimuth lies in [phi_min, phi_max] degrees.
    std::size_t count_lobes(double within_db, double phi_min_deg = 0.0, double phi_max_deg = 360.0) const;
};

// Local maxima of the dB pattern with topographic prominence >= threshold.
LobeReport analyze_lobes(const PatternGrid &pattern, const LobeCriteria &criteria = {});

struct InterpolationRun {
    double alpha = 0.0;
    ArrayGeometry geometry;
    LobeReport report;
};

// Applies the physical phase gradients of codeword idx (as seen on the
// reference spacing) to arrays with the given spacings. All runs share one
// observation radius, the default radius of the largest of the arrays, so
// powers are directly comparable.
std::vector<InterpolationRun> interpolation_experiment(const CodebookConfig &cfg, CodewordIndex idx,
                                                       const std::vector<double> &dense_alphas,
                                                       double reference_alpha = 0.5,
                                                       const PatternOptions &options = {},
                                                       const LobeCriteria &criteria = {});

double to_dbw(double watts);

} // namespace evcb

#endif
