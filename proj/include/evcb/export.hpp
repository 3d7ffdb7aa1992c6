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

#ifndef EVCB_EXPORT_HPP
#define EVCB_EXPORT_HPP

#include "evcb/classifier.hpp"
#include "evcb/linksim.hpp"
#include "evcb/pattern.hpp"
#include "evcb/rayleigh.hpp"

#include <string>
#include <vector>

// Text exports. Every floating-point value is written with 12 significant
// digits so that reruns are byte-identical.
namespace evcb::io {

std::string format_number(double v);
// Value rounded to 12 significant digits (non-finite values pass through).
double round12(double v);

// l,m,l_shift,m_shift,evanescent
std::string mask_csv(const EvanescentMask &mask);
// {"total", "evanescent", "redundancy"}
std::string stats_json(const ZoneStats &stats);

// theta_deg,phi_deg,power_dbw
std::string pattern_csv(const PatternGrid &pattern);
std::string lobe_report_json(const LobeReport &report);
// Coarse text heatmap of the pattern relative to its peak (rows: theta).
std::string ascii_heatmap(const PatternGrid &pattern, double theta_res_deg = 5.0, double phi_res_deg = 5.0);

// l,m,l_shift,m_shift,correlation,zone
std::string correlation_csv(const CorrelationGrid &grid, const EvanescentMask &mask);
// {"regular", "boundary", "evanescent"}
std::string zone_energy_json(const ZoneEnergy &energy);

// realization,n1,n2,re,im
std::string channels_csv(const std::vector<ChannelVector> &channels);
// {"removed_energy_fraction_mean", "removed_energy_fraction_std"}
std::string rayleigh_summary_json(const FilteredBatch &batch);

// {"snr_db", "drops", "evanescent_fraction", "throughput_proxy", "restricted"}
std::string selection_stats_json(const SelectionStats &stats);
// l,m,count  (raw or capped counts)
std::string heatmap_csv(const Heatmap &map, bool capped);
// l_shift,m_shift
std::string boundary_csv(const Heatmap &map);

} // namespace evcb::io

#endif
