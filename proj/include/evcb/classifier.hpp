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

#ifndef EVCB_CLASSIFIER_HPP
#define EVCB_CLASSIFIER_HPP

#include "evcb/codebook.hpp"
#include "evcb/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace evcb {

// Squared normalized transverse frequency of a codeword,
// (l'/(a1*N1*O1))^2 + (m'/(a2*N2*O2))^2. Values above 1 are evanescent.
double ellipse_value(const CodebookConfig &cfg, CodewordIndex idx, double alpha1, double alpha2);

// True iff ellipse_value > 1; the boundary itself is regular (grazing beam).
bool is_evanescent(const CodebookConfig &cfg, CodewordIndex idx, double alpha1, double alpha2);

// Evanescent flags over the whole (l, m) grid, l-major.
class EvanescentMask {
public:
    EvanescentMask(CodebookConfig cfg, double alpha1, double alpha2);

    const CodebookConfig &config() const { return cfg_; }
    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }

    bool flag(CodewordIndex idx) const;
    // Lookup by shifted index, for DFT-shift (centred) layouts.
    bool flag_shifted(ShiftedIndex s) const;

    std::size_t count_evanescent() const;
    // Cells with ellipse_value within tolerance of 1 (regular by convention).
    std::size_t count_boundary() const { return boundary_; }
    std::size_t size() const { return flags_.size(); }

    bool operator==(const EvanescentMask &other) const;

private:
    CodebookConfig cfg_;
    double alpha1_;
    double alpha2_;
    std::vector<std::uint8_t> flags_;
    std::size_t boundary_ = 0;
};

EvanescentMask build_mask(const CodebookConfig &cfg, double alpha1, double alpha2);

struct ZoneStats {
    std::size_t total = 0;
    std::size_t evanescent = 0;
    double redundancy = 0.0; // evanescent / total
};

ZoneStats redundancy_stats(const EvanescentMask &mask);

// Beam direction of a regular codeword; std::nullopt marks an evanescent
// codeword (no real elevation exists). Broadside reports phi = 0.
std::optional<Direction> beam_direction(const CodebookConfig &cfg, CodewordIndex idx, double alpha1,
                                        double alpha2);

struct CodewordWavenumbers {
    double kx = 0.0;
    double ky = 0.0;
    double kt = 0.0;
    double k = 0.0;
    bool evanescent() const;
};

// kx = l' k/(a1 N1 O1), ky = m' k/(a2 N2 O2); evanescent iff kt > k.
CodewordWavenumbers codeword_wavenumbers(const CodebookConfig &cfg, CodewordIndex idx, double alpha1,
                                         double alpha2, double k);

struct NyquistLimits {
    double ks_x = 0.0; // k / (2 a1)
    double ks_y = 0.0; // k / (2 a2)

    // Largest spatial frequency supported along azimuth phi: distance from the
    // origin to the border of the rectangle |kx| <= ks_x, |ky| <= ks_y.
    double supported_k(double phi) const;
};

NyquistLimits nyquist_limits(const ArrayGeometry &geometry);

// True when the codeword sits on the outermost grid row/column (l = N1O1/2 or
// m = N2O2/2); such codewords alias on any uniform spacing.
bool is_nyquist_edge(const CodebookConfig &cfg, CodewordIndex idx);

struct WidebandEntry {
    double frequency = 0.0; // Hz
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    EvanescentMask mask;
    ZoneStats stats;
};

// One mask per sub-carrier fc + offset, with alpha_i(f) = d_i f / c.
std::vector<WidebandEntry> wideband_masks(const CodebookConfig &cfg, double d1, double d2, double fc,
                                          const std::vector<double> &offsets);

// Normalized correlation |v_lm^T h|^2 / (|v_lm|^2 |h|^2) for every codeword,
// l-major. For o1 = o2 = 1 the grid sums to 1.
struct CorrelationGrid {
    CodebookConfig cfg;
    std::vector<double> values;
    double at(CodewordIndex idx) const { return values[static_cast<std::size_t>(idx.l) * cfg.grid2() + idx.m]; }
};

CorrelationGrid project_channel(const CodebookConfig &cfg, const ChannelVector &ch);

enum class ZoneClass : std::uint8_t { regular = 0, boundary = 1, evanescent = 2 };

// Evanescent cells within Chebyshev distance 1 (periodic in index space) of a
// regular cell are classed as boundary.
std::vector<ZoneClass> zone_classes(const EvanescentMask &mask);

struct ZoneEnergy {
    double regular = 0.0;
    double boundary = 0.0;
    double evanescent = 0.0; // deep evanescent, not boundary-adjacent
};

// Fractions of total correlation energy per zone class.
ZoneEnergy zone_energy(const CorrelationGrid &grid, const EvanescentMask &mask);

} // namespace evcb

#endif
