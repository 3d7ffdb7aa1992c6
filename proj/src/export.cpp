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

#include "evcb/export.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace evcb::io {

using nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

namespace {

ordered_json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

} // namespace

std::string mask_csv(const EvanescentMask &mask) {
    const CodebookConfig &cfg = mask.config();
    std::string out = "l,m,l_shift,m_shift,evanescent\n";
    for (int l = 0; l < cfg.grid1(); ++l)
        for (int m = 0; m < cfg.grid2(); ++m) {
            const ShiftedIndex s = shift_index(cfg, {l, m});
            out += std::to_string(l) + ',' + std::to_string(m) + ',' + std::to_string(s.l) + ',' + std::to_string(s.m) +
                   ',' + (mask.flag({l, m}) ? '1' : '0') + '\n';
        }
    return out;
}

std::string stats_json(const ZoneStats &stats) {
    ordered_json j;
    j["total"] = stats.total;
    j["evanescent"] = stats.evanescent;
    j["redundancy"] = number(stats.redundancy);
    return dump(j);
}

std::string pattern_csv(const PatternGrid &pattern) {
    std::string out = "theta_deg,phi_deg,power_dbw\n";
    out.reserve(out.size() + pattern.power.size() * 24);
    for (int i = 0; i < pattern.n_theta; ++i)
        for (int j = 0; j < pattern.n_phi; ++j)
            out += format_number(pattern.theta_deg(i)) + ',' + format_number(pattern.phi_deg(j)) + ',' +
                   format_number(to_dbw(pattern.at(i, j))) + '\n';
    return out;
}

std::string lobe_report_json(const LobeReport &report) {
    ordered_json j;
    j["peak"] = {{"theta_deg", number(rad2deg(report.peak_direction.theta))},
                 {"phi_deg", number(rad2deg(report.peak_direction.phi))},
                 {"power_dbw", number(report.peak_power_dbw)}};
    j["mean_power_dbw"] = number(report.mean_power_dbw);
    j["gain_db"] = number(report.gain_db);
    j["directional"] = report.directional;
    ordered_json lobes = ordered_json::array();
    for (const Lobe &l : report.lobes)
        lobes.push_back({{"theta_deg", number(rad2deg(l.direction.theta))},
                         {"phi_deg", number(rad2deg(l.direction.phi))},
                         {"power_dbw", number(l.power_dbw)},
                         {"prominence_db", number(l.prominence_db)}});
    j["lobes"] = std::move(lobes);
    return dump(j);
}

std::string ascii_heatmap(const PatternGrid &pattern, double theta_res_deg, double phi_res_deg) {
    static constexpr char kRamp[] = " .:-=+*#%@";
    constexpr int kLevels = sizeof(kRamp) - 2;
    double peak = 0.0;
    for (double p : pattern.power) peak = std::max(peak, p);
    const double peak_db = to_dbw(peak);

    const int ti = std::max(1, static_cast<int>(std::lround(theta_res_deg / pattern.theta_step_deg)));
    const int pj = std::max(1, static_cast<int>(std::lround(phi_res_deg / pattern.phi_step_deg)));
    std::string out = "theta\\phi 0.." + format_number(360.0 - phi_res_deg) + " deg, '@' = peak, ' ' <= peak-30 dB\n";
    for (int i = 0; i < pattern.n_theta; i += ti) {
        char label[16];
        std::snprintf(label, sizeof label, "%5.1f |", pattern.theta_deg(i));
        out += label;
        for (int j = 0; j < pattern.n_phi; j += pj) {
            const double rel = to_dbw(pattern.at(i, j)) - peak_db; // <= 0
            int level = static_cast<int>(std::floor((rel + 30.0) / 30.0 * kLevels));
            level = std::clamp(level, 0, kLevels);
            out += kRamp[level];
        }
        out += "|\n";
    }
    return out;
}

std::string correlation_csv(const CorrelationGrid &grid, const EvanescentMask &mask) {
    const CodebookConfig &cfg = grid.cfg;
    const std::vector<ZoneClass> zones = zone_classes(mask);
    static const char *kZone[] = {"regular", "boundary", "evanescent"};
    std::string out = "l,m,l_shift,m_shift,correlation,zone\n";
    for (int l = 0; l < cfg.grid1(); ++l)
        for (int m = 0; m < cfg.grid2(); ++m) {
            const ShiftedIndex s = shift_index(cfg, {l, m});
            const std::size_t i = static_cast<std::size_t>(l) * cfg.grid2() + m;
            out += std::to_string(l) + ',' + std::to_string(m) + ',' + std::to_string(s.l) + ',' + std::to_string(s.m) +
                   ',' + format_number(grid.values[i]) + ',' + kZone[static_cast<int>(zones[i])] + '\n';
        }
    return out;
}

std::string zone_energy_json(const ZoneEnergy &energy) {
    ordered_json j;
    j["regular"] = number(energy.regular);
    j["boundary"] = number(energy.boundary);
    j["evanescent"] = number(energy.evanescent);
    return dump(j);
}

std::string channels_csv(const std::vector<ChannelVector> &channels) {
    std::string out = "realization,n1,n2,re,im\n";
    for (std::size_t r = 0; r < channels.size(); ++r) {
        const ChannelVector &ch = channels[r];
        std::size_t e = 0;
        for (int i = 0; i < ch.geometry.n1; ++i)
            for (int k = 0; k < ch.geometry.n2; ++k, ++e)
                out += std::to_string(r) + ',' + std::to_string(i) + ',' + std::to_string(k) + ',' +
                       format_number(ch.gains[e].real()) + ',' + format_number(ch.gains[e].imag()) + '\n';
    }
    return out;
}

std::string rayleigh_summary_json(const FilteredBatch &batch) {
    ordered_json j;
    j["removed_energy_fraction_mean"] = number(batch.removed_mean);
    j["removed_energy_fraction_std"] = number(batch.removed_std);
    return dump(j);
}

std::string selection_stats_json(const SelectionStats &stats) {
    ordered_json j;
    j["snr_db"] = number(stats.snr_db);
    j["drops"] = stats.drops;
    j["evanescent_fraction"] = number(stats.evanescent_fraction);
    j["throughput_proxy"] = number(stats.throughput_proxy);
    j["restricted"] = stats.restricted;
    return dump(j);
}

std::string heatmap_csv(const Heatmap &map, bool capped) {
    std::string out = "l,m,count\n";
    for (const HeatmapCell &c : map.cells)
        out += std::to_string(c.index.l) + ',' + std::to_string(c.index.m) + ',' +
               std::to_string(capped ? c.capped : c.raw) + '\n';
    return out;
}

std::string boundary_csv(const Heatmap &map) {
    std::string out = "l_shift,m_shift\n";
    for (const auto &[x, y] : map.boundary) out += format_number(x) + ',' + format_number(y) + '\n';
    return out;
}

} // namespace evcb::io
