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

#ifndef EVCB_LINKSIM_HPP
#define EVCB_LINKSIM_HPP

#include "evcb/classifier.hpp"
#include "evcb/codebook.hpp"
#include "evcb/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace evcb {

// Single-user rank-1 codeword selection over random LOS drops.
//
// Per drop: a direction uniform in solid angle over the front hemisphere,
// the LOS channel h, an observation y = h [+ g * h_interf] + n with n white
// CN(0, 1/snr) per element, and the codeword maximizing |v^T y|^2 (ties go to
// the lowest l, then m). The proxy rate is log2(1 + snr * |v^T h|^2 / (|v|^2 |h|^2)).
// An SNR of +infinity means a noiseless observation.
struct SimConfig {
    CodebookConfig cfg{8, 8, 4, 4};
    ArrayGeometry geometry{8, 8, 0.5, 0.5, 1.0};
    std::vector<double> snr_db_list{20.0};
    std::size_t drops = 1000;
    std::uint64_t seed = 0;
    bool restrict_evanescent = false;
    // Interferer power relative to the served channel, dB; absent = none.
    std::optional<double> interference_power_db;

    void validate() const;
};

struct SelectionStats {
    double snr_db = 0.0;
    std::size_t drops = 0;
    bool restricted = false;
    CodebookConfig cfg;
    std::vector<std::size_t> counts; // l-major over (l, m)
    std::size_t evanescent_selections = 0;
    double evanescent_fraction = 0.0;
    double throughput_proxy = 0.0; // bits per use, mean over drops

    std::size_t count(CodewordIndex idx) const { return counts[static_cast<std::size_t>(idx.l) * cfg.grid2() + idx.m]; }
};

// One SelectionStats per entry of snr_db_list. Every SNR point replays the
// same drops (directions and unit noise draws), scaled to its noise level.
std::vector<SelectionStats> run_drops(const SimConfig &sim);

// Best codeword for an observation; `mask` restricts the search when non-null.
CodewordIndex select_codeword(const CodebookConfig &cfg, const std::vector<cplx> &observation,
                              const EvanescentMask *mask = nullptr);

struct HeatmapCell {
    CodewordIndex index;
    std::size_t raw = 0;
    std::size_t capped = 0;
};

struct Heatmap {
    std::vector<HeatmapCell> cells;
    // Points (l', m') on the zone-boundary ellipse inside the index square.
    std::vector<std::pair<double, double>> boundary;
};

// Errors: stats without drops -> invalid_argument.
Heatmap selection_heatmap(const SelectionStats &stats, double alpha1, double alpha2, std::size_t cap = 300,
                          int boundary_points = 720);

} // namespace evcb

#endif
