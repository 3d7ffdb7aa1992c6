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
// evcb command-line tool. Talks to the library through the C API only.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error. Outputs are staged
// as hidden temporaries and renamed into place only after every file of the
// run was written, so a failing run leaves nothing behind.

#include "evcb/evcb.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char *kOutDirEnv = "EVCB_OUT_DIR";
constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(evcb_status s) {
    if (s != EVCB_OK) throw RuntimeError(evcb_last_error());
}

template <class F>
std::string text(F &&f) {
    char *s = nullptr;
    check(f(&s));
    std::string out(s);
    evcb_string_free(s);
    return out;
}

// Hidden temporaries in the output directory, renamed on commit.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
    OutputSet(const OutputSet &) = delete;
    OutputSet &operator=(const OutputSet &) = delete;
    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (const auto &f : files_) fs::remove(tmp_path(f), ec);
    }

    void add(const std::string &name, const std::string &content) {
        std::ofstream out(tmp_path(name), std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) throw RuntimeError("cannot write " + (dir_ / name).string());
        files_.push_back(name);
    }

    void commit() {
        for (const auto &f : files_) {
            std::error_code ec;
            if (fs::is_directory(dir_ / f, ec)) throw RuntimeError("output path is a directory: " + (dir_ / f).string());
        }
        for (std::size_t i = 0; i < files_.size(); ++i) {
            std::error_code ec;
            fs::rename(tmp_path(files_[i]), dir_ / files_[i], ec);
            if (ec) {
                for (std::size_t k = 0; k < i; ++k) fs::remove(dir_ / files_[k], ec); // no partial sets
                throw RuntimeError("cannot rename into " + (dir_ / files_[i]).string() + ": " + ec.message());
            }
        }
        committed_ = true;
    }

    const std::vector<std::string> &files() const { return files_; }

private:
    fs::path tmp_path(const std::string &name) const { return dir_ / ("." + name + ".tmp"); }

    fs::path dir_;
    std::vector<std::string> files_;
    bool committed_ = false;
};

// ---- shared argument groups --------------------------------------------------

struct ArrayArgs {
    int n1 = 8, n2 = 8;
    int o1 = 4, o2 = 4;
};

// Spacing given either as normalized alpha or as (spacing, frequency).
struct SpacingArgs {
    std::optional<double> alpha, alpha1, alpha2;
    std::optional<double> d1, d2, freq;
    std::optional<double> wavelength;
    double default_alpha = 0.5;
};

struct Spacing {
    double alpha1 = 0.5, alpha2 = 0.5;
    double wavelength = 1.0; // m
    std::string mode;        // "alpha" or "physical"
};

void add_array_options(CLI::App *cmd, ArrayArgs &a, bool required_n) {
    auto *n1 = cmd->add_option("--n1", a.n1, "antennas along x")->check(CLI::PositiveNumber);
    auto *n2 = cmd->add_option("--n2", a.n2, "antennas along y")->check(CLI::PositiveNumber);
    if (required_n) {
        n1->required();
        n2->required();
    } else {
        n1->capture_default_str();
        n2->capture_default_str();
    }
}

void add_oversampling_options(CLI::App *cmd, ArrayArgs &a) {
    cmd->add_option("--o1", a.o1, "oversampling along x")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--o2", a.o2, "oversampling along y")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_spacing_options(CLI::App *cmd, SpacingArgs &s) {
    cmd->add_option("--alpha", s.alpha, "normalized spacing d/lambda on both axes");
    cmd->add_option("--alpha1", s.alpha1, "normalized spacing along x");
    cmd->add_option("--alpha2", s.alpha2, "normalized spacing along y");
    cmd->add_option("--d1-m", s.d1, "spacing along x, m (with --freq-hz)");
    cmd->add_option("--d2-m", s.d2, "spacing along y, m (with --freq-hz)");
    cmd->add_option("--freq-hz", s.freq, "carrier frequency, Hz");
    cmd->add_option("--wavelength-m", s.wavelength, "wavelength in alpha mode, m (default 1)");
}

// alpha for spacing 1 m at f, i.e. f / c.
double per_metre(double freq_hz) {
    double a = 0.0;
    check(evcb_normalized_spacing(1.0, freq_hz, &a));
    return a;
}

Spacing resolve(const SpacingArgs &s) {
    const bool physical = s.d1 || s.d2;
    const bool normalized = s.alpha || s.alpha1 || s.alpha2;
    if (physical && normalized) throw UsageError("give either alpha options or --d1-m/--d2-m, not both");
    Spacing out;
    if (physical) {
        if (!s.d1 || !s.d2 || !s.freq) throw UsageError("physical geometry needs --d1-m, --d2-m and --freq-hz");
        if (s.wavelength) throw UsageError("--wavelength-m is implied by --freq-hz in physical mode");
        const double a = per_metre(*s.freq);
        out.alpha1 = *s.d1 * a;
        out.alpha2 = *s.d2 * a;
        out.wavelength = 1.0 / a;
        out.mode = "physical";
    } else {
        if (s.alpha && (s.alpha1 || s.alpha2)) throw UsageError("--alpha conflicts with --alpha1/--alpha2");
        const double base = s.alpha.value_or(s.default_alpha);
        out.alpha1 = s.alpha1.value_or(base);
        out.alpha2 = s.alpha2.value_or(base);
        out.wavelength = s.wavelength.value_or(1.0);
        out.mode = "alpha";
    }
    if (!(out.alpha1 > 0.0) || !(out.alpha2 > 0.0) || !(out.wavelength > 0.0))
        throw UsageError("spacings and wavelength must be positive");
    return out;
}

// Manifest numbers share the 12-significant-digit format of the data files.
double r12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

ordered_json spacing_json(const Spacing &s) {
    return {{"mode", s.mode}, {"alpha1", r12(s.alpha1)}, {"alpha2", r12(s.alpha2)}, {"wavelength_m", r12(s.wavelength)}};
}

evcb_geometry geometry_of(const ArrayArgs &a, const Spacing &s) {
    return {a.n1, a.n2, s.alpha1 * s.wavelength, s.alpha2 * s.wavelength, s.wavelength};
}

double parse_double(const std::string &text, const char *what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    if (used != text.size()) throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    return v;
}

void write_manifest(OutputSet &out, const std::string &command, ordered_json params,
                    const std::optional<std::uint64_t> &seed) {
    ordered_json m;
    m["command"] = command;
    m["tool_version"] = evcb_version();
    m["parameters"] = std::move(params);
    m["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    m["outputs"] = out.files();
    out.add(command + "_manifest.json", m.dump(2) + "\n");
}

// ---- mask --------------------------------------------------------------------

struct MaskArgs {
    ArrayArgs array;
    SpacingArgs spacing;
    std::vector<double> offsets;
};

void run_mask(const MaskArgs &a, const fs::path &dir) {
    const Spacing sp = resolve(a.spacing);
    const evcb_codebook cb{a.array.n1, a.array.n2, a.array.o1, a.array.o2};
    OutputSet out(dir);
    ordered_json params{{"n1", cb.n1}, {"n2", cb.n2}, {"o1", cb.o1}, {"o2", cb.o2}, {"spacing", spacing_json(sp)}};

    auto emit = [&](evcb_mask *mask, const std::string &stem) {
        out.add(stem + ".csv", text([&](char **s) { return evcb_mask_csv(mask, s); }));
        out.add(stem + "_stats.json", text([&](char **s) { return evcb_mask_stats_json(mask, s); }));
    };

    if (a.offsets.empty()) {
        evcb_mask *mask = nullptr;
        check(evcb_mask_build(&cb, sp.alpha1, sp.alpha2, &mask));
        try {
            emit(mask, "mask");
        } catch (...) {
            evcb_mask_free(mask);
            throw;
        }
        evcb_mask_free(mask);
    } else {
        // Physical spacings are held fixed while the frequency moves.
        const double fc = a.spacing.freq.value_or(1e10);
        const double a_fc = per_metre(fc);
        const double d1 = sp.alpha1 / a_fc, d2 = sp.alpha2 / a_fc;
        ordered_json carriers = ordered_json::array();
        for (std::size_t i = 0; i < a.offsets.size(); ++i) {
            const double f = fc + a.offsets[i];
            evcb_mask *mask = nullptr;
            check(evcb_mask_build_physical(&cb, d1, d2, f, &mask));
            double a1 = 0.0, a2 = 0.0;
            try {
                check(evcb_mask_alpha(mask, &a1, &a2));
                emit(mask, "mask_f" + std::to_string(i));
            } catch (...) {
                evcb_mask_free(mask);
                throw;
            }
            evcb_mask_free(mask);
            carriers.push_back({{"index", i}, {"offset_hz", a.offsets[i]}, {"frequency_hz", f}, {"alpha1", r12(a1)},
                                {"alpha2", r12(a2)}});
        }
        params["center_frequency_hz"] = fc;
        params["d1_m"] = r12(d1);
        params["d2_m"] = r12(d2);
        params["carriers"] = std::move(carriers);
    }
    write_manifest(out, "mask", std::move(params), std::nullopt);
    out.commit();
}

// ---- pattern -----------------------------------------------------------------

struct PatternArgs {
    ArrayArgs array;
    SpacingArgs spacing;
    std::string idx;
    std::optional<double> kx_over_k, ky_over_k;
    double theta_step = 0.5, phi_step = 0.5;
    double radius = 0.0;
    bool allow_near_field = false;
    bool ascii = false;
    evcb_lobe_criteria criteria{};
};

std::pair<int, int> parse_index(const std::string &s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--idx expects l,m");
    const double l = parse_double(s.substr(0, comma), "--idx"), m = parse_double(s.substr(comma + 1), "--idx");
    if (l != std::floor(l) || m != std::floor(m)) throw UsageError("--idx expects integers");
    return {static_cast<int>(l), static_cast<int>(m)};
}

void run_pattern(const PatternArgs &a, const fs::path &dir) {
    const bool by_index = !a.idx.empty();
    const bool by_k = a.kx_over_k || a.ky_over_k;
    if (by_index == by_k) throw UsageError("give exactly one of --idx or --kx-over-k/--ky-over-k");
    const Spacing sp = resolve(a.spacing);
    const evcb_geometry g = geometry_of(a.array, sp);
    const std::size_t n = static_cast<std::size_t>(a.array.n1) * static_cast<std::size_t>(a.array.n2);
    std::vector<evcb_complex> w(n);
    ordered_json params{{"n1", a.array.n1}, {"n2", a.array.n2}, {"spacing", spacing_json(sp)}};
    if (by_index) {
        const auto [l, m] = parse_index(a.idx);
        const evcb_codebook cb{a.array.n1, a.array.n2, a.array.o1, a.array.o2};
        check(evcb_codeword(&cb, l, m, w.data(), w.size()));
        params["o1"] = cb.o1;
        params["o2"] = cb.o2;
        params["idx"] = {l, m};
        double th = 0.0, ph = 0.0;
        int ev = 0;
        check(evcb_beam_direction(&cb, l, m, sp.alpha1, sp.alpha2, &th, &ph, &ev));
        params["evanescent"] = ev != 0;
        if (!ev) params["nominal_direction_deg"] = {r12(th * 180.0 / kPi), r12(ph * 180.0 / kPi)};
    } else {
        const double k = 2.0 * kPi / sp.wavelength;
        const double kx = a.kx_over_k.value_or(0.0), ky = a.ky_over_k.value_or(0.0);
        check(evcb_steering(&g, kx * k, ky * k, w.data(), w.size()));
        params["kx_over_k"] = kx;
        params["ky_over_k"] = ky;
    }
    const evcb_pattern_options opt{a.theta_step, a.phi_step, a.radius, a.allow_near_field ? 1 : 0};
    params["theta_step_deg"] = a.theta_step;
    params["phi_step_deg"] = a.phi_step;
    params["allow_near_field"] = a.allow_near_field;
    params["lobe_criteria"] = {{"prominence_db", a.criteria.prominence_db},
                               {"directional_margin_db", a.criteria.directional_margin_db},
                               {"max_theta_deg", a.criteria.max_theta_deg}};

    evcb_pattern *p = nullptr;
    evcb_lobes *lobes = nullptr;
    OutputSet out(dir);
    try {
        check(evcb_pattern_synthesize(&g, w.data(), w.size(), &opt, &p));
        check(evcb_lobes_analyze(p, &a.criteria, &lobes));
        double radius = 0.0;
        check(evcb_pattern_size(p, nullptr, nullptr, &radius));
        params["radius_m"] = r12(radius);
        out.add("pattern.csv", text([&](char **s) { return evcb_pattern_csv(p, s); }));
        out.add("pattern_lobes.json", text([&](char **s) { return evcb_lobes_json(lobes, s); }));
        if (a.ascii) {
            const std::string art = text([&](char **s) { return evcb_pattern_ascii(p, s); });
            out.add("pattern_ascii.txt", art);
            std::cout << art;
        }
    } catch (...) {
        evcb_lobes_free(lobes);
        evcb_pattern_free(p);
        throw;
    }
    evcb_lobes_free(lobes);
    evcb_pattern_free(p);
    write_manifest(out, "pattern", std::move(params), std::nullopt);
    out.commit();
}

// ---- nearfield ---------------------------------------------------------------

struct NearfieldArgs {
    std::optional<int> n;
    ArrayArgs array{8, 8, 1, 1};
    SpacingArgs spacing;
    double r_over_lambda = 1.0;
    double theta_deg = 0.0, phi_deg = 0.0;
};

void run_nearfield(NearfieldArgs a, const fs::path &dir) {
    if (a.n) a.array.n1 = a.array.n2 = *a.n;
    const Spacing sp = resolve(a.spacing);
    const evcb_geometry g = geometry_of(a.array, sp);
    const evcb_codebook cb{a.array.n1, a.array.n2, a.array.o1, a.array.o2};
    if (!(a.r_over_lambda > 0.0)) throw UsageError("--r-over-lambda must be positive");
    const double r = a.r_over_lambda * sp.wavelength;
    std::vector<evcb_complex> h(static_cast<std::size_t>(g.n1) * static_cast<std::size_t>(g.n2));
    check(evcb_near_field_channel(&g, r, a.theta_deg * kPi / 180.0, a.phi_deg * kPi / 180.0, h.data(), h.size()));

    evcb_projection *proj = nullptr;
    OutputSet out(dir);
    check(evcb_project_channel(&cb, &g, h.data(), h.size(), &proj));
    try {
        out.add("nearfield_correlation.csv", text([&](char **s) { return evcb_projection_csv(proj, s); }));
        out.add("nearfield_zones.json", text([&](char **s) { return evcb_projection_zone_json(proj, s); }));
    } catch (...) {
        evcb_projection_free(proj);
        throw;
    }
    evcb_projection_free(proj);
    ordered_json params{{"n1", cb.n1},
                        {"n2", cb.n2},
                        {"o1", cb.o1},
                        {"o2", cb.o2},
                        {"spacing", spacing_json(sp)},
                        {"r_over_lambda", a.r_over_lambda},
                        {"theta_deg", a.theta_deg},
                        {"phi_deg", a.phi_deg}};
    write_manifest(out, "nearfield", std::move(params), std::nullopt);
    out.commit();
}

// ---- rayleigh ----------------------------------------------------------------

struct RayleighArgs {
    ArrayArgs array;
    SpacingArgs spacing;
    std::size_t realizations = 1000;
    std::uint64_t seed = 0;
    bool export_channels = false;
};

void run_rayleigh(const RayleighArgs &a, const fs::path &dir) {
    const Spacing sp = resolve(a.spacing);
    const evcb_rayleigh_config cfg{a.array.n1, a.array.n2, sp.alpha1, sp.alpha2, a.seed, a.realizations};
    evcb_rayleigh *r = nullptr;
    OutputSet out(dir);
    check(evcb_rayleigh_run(&cfg, &r));
    try {
        out.add("rayleigh_summary.json", text([&](char **s) { return evcb_rayleigh_summary_json(r, s); }));
        if (a.export_channels) {
            out.add("rayleigh_before.csv", text([&](char **s) { return evcb_rayleigh_csv(r, 0, s); }));
            out.add("rayleigh_after.csv", text([&](char **s) { return evcb_rayleigh_csv(r, 1, s); }));
        }
    } catch (...) {
        evcb_rayleigh_free(r);
        throw;
    }
    evcb_rayleigh_free(r);
    ordered_json params{{"n1", cfg.n1},
                        {"n2", cfg.n2},
                        {"spacing", spacing_json(sp)},
                        {"realizations", cfg.realizations},
                        {"export_channels", a.export_channels}};
    write_manifest(out, "rayleigh", std::move(params), a.seed);
    out.commit();
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
    ArrayArgs array;
    SpacingArgs spacing;
    std::vector<std::string> snr_db{"20"};
    std::size_t drops = 1000;
    std::uint64_t seed = 0;
    bool restrict_evanescent = false;
    std::optional<double> interference_db;
    std::size_t heatmap_cap = 300;
};

void run_simulate(const SimulateArgs &a, const fs::path &dir) {
    const Spacing sp = resolve(a.spacing);
    std::vector<double> snr;
    for (const std::string &s : a.snr_db) snr.push_back(parse_double(s, "--snr-db"));
    evcb_sim_config cfg{};
    cfg.codebook = {a.array.n1, a.array.n2, a.array.o1, a.array.o2};
    cfg.geometry = geometry_of(a.array, sp);
    cfg.snr_db = snr.data();
    cfg.n_snr = snr.size();
    cfg.drops = a.drops;
    cfg.seed = a.seed;
    cfg.restrict_evanescent = a.restrict_evanescent ? 1 : 0;
    cfg.has_interference = a.interference_db ? 1 : 0;
    cfg.interference_power_db = a.interference_db.value_or(0.0);

    evcb_sim *sim = nullptr;
    OutputSet out(dir);
    check(evcb_sim_run(&cfg, &sim));
    try {
        for (std::size_t i = 0; i < evcb_sim_points(sim); ++i) {
            const std::string stem = "simulate_p" + std::to_string(i);
            out.add(stem + "_stats.json", text([&](char **s) { return evcb_sim_stats_json(sim, i, s); }));
            out.add(stem + "_heatmap.csv",
                    text([&](char **s) { return evcb_sim_heatmap_csv(sim, i, a.heatmap_cap, 0, s); }));
            out.add(stem + "_heatmap_capped.csv",
                    text([&](char **s) { return evcb_sim_heatmap_csv(sim, i, a.heatmap_cap, 1, s); }));
        }
        out.add("simulate_boundary.csv", text([&](char **s) { return evcb_sim_boundary_csv(sim, 0, s); }));
    } catch (...) {
        evcb_sim_free(sim);
        throw;
    }
    evcb_sim_free(sim);
    ordered_json snr_json = ordered_json::array();
    for (double s : snr) snr_json.push_back(std::isfinite(s) ? ordered_json(s) : ordered_json("inf"));
    ordered_json params{{"n1", cfg.codebook.n1},
                        {"n2", cfg.codebook.n2},
                        {"o1", cfg.codebook.o1},
                        {"o2", cfg.codebook.o2},
                        {"spacing", spacing_json(sp)},
                        {"snr_db", std::move(snr_json)},
                        {"drops", cfg.drops},
                        {"restrict_evanescent", a.restrict_evanescent},
                        {"interference_power_db",
                         a.interference_db ? ordered_json(*a.interference_db) : ordered_json(nullptr)},
                        {"heatmap_cap", a.heatmap_cap}};
    write_manifest(out, "simulate", std::move(params), a.seed);
    out.commit();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"evcb: evanescent codewords of Kronecker-product DFT codebooks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(evcb_version()));

    std::string out_dir;
    if (const char *env = std::getenv(kOutDirEnv)) out_dir = env;
    app.add_option("--out-dir", out_dir, std::string("output directory (default $") + kOutDirEnv + " or .)");

    MaskArgs mask;
    auto *mask_cmd = app.add_subcommand("mask", "evanescent mask and redundancy of a codebook");
    add_array_options(mask_cmd, mask.array, true);
    add_oversampling_options(mask_cmd, mask.array);
    add_spacing_options(mask_cmd, mask.spacing);
    mask_cmd->add_option("--offsets-hz", mask.offsets, "sub-carrier offsets from --freq-hz (default 1e10 Hz)")
        ->delimiter(',');

    PatternArgs pattern;
    evcb_lobe_criteria_default(&pattern.criteria);
    auto *pattern_cmd = app.add_subcommand("pattern", "beam pattern and lobe report of a precoder");
    add_array_options(pattern_cmd, pattern.array, false);
    add_oversampling_options(pattern_cmd, pattern.array);
    add_spacing_options(pattern_cmd, pattern.spacing);
    pattern_cmd->add_option("--idx", pattern.idx, "codeword index l,m");
    pattern_cmd->add_option("--kx-over-k", pattern.kx_over_k, "x phase gradient / k");
    pattern_cmd->add_option("--ky-over-k", pattern.ky_over_k, "y phase gradient / k");
    pattern_cmd->add_option("--theta-step-deg", pattern.theta_step, "elevation step")->capture_default_str();
    pattern_cmd->add_option("--phi-step-deg", pattern.phi_step, "azimuth step")->capture_default_str();
    pattern_cmd->add_option("--radius-m", pattern.radius, "observation radius (0 = 10x far-field bound)");
    pattern_cmd->add_flag("--allow-near-field", pattern.allow_near_field, "permit radii inside the far-field bound");
    pattern_cmd->add_flag("--ascii", pattern.ascii, "print a coarse heatmap and save it as pattern_ascii.txt");
    pattern_cmd->add_option("--prominence-db", pattern.criteria.prominence_db, "minimum lobe prominence")
        ->capture_default_str();
    pattern_cmd->add_option("--margin-db", pattern.criteria.directional_margin_db, "peak over mean for directional")
        ->capture_default_str();

    NearfieldArgs nearfield;
    auto *nf_cmd = app.add_subcommand("nearfield", "project a near-field channel on an oversampling-free codebook");
    nf_cmd->add_option("--n", nearfield.n, "antennas per axis (sets --n1 and --n2)");
    add_array_options(nf_cmd, nearfield.array, false);
    add_oversampling_options(nf_cmd, nearfield.array);
    add_spacing_options(nf_cmd, nearfield.spacing);
    nf_cmd->add_option("--r-over-lambda", nearfield.r_over_lambda, "focus distance in wavelengths")->required();
    nf_cmd->add_option("--theta", nearfield.theta_deg, "focus elevation, deg")->capture_default_str();
    nf_cmd->add_option("--phi", nearfield.phi_deg, "focus azimuth, deg")->capture_default_str();

    RayleighArgs rayleigh;
    auto *ray_cmd = app.add_subcommand("rayleigh", "Rayleigh channels with evanescent components removed");
    add_array_options(ray_cmd, rayleigh.array, false);
    add_spacing_options(ray_cmd, rayleigh.spacing);
    ray_cmd->add_option("--realizations", rayleigh.realizations)->check(CLI::PositiveNumber)->capture_default_str();
    ray_cmd->add_option("--seed", rayleigh.seed)->capture_default_str();
    ray_cmd->add_flag("--export-channels", rayleigh.export_channels, "also write raw and filtered channel CSVs");

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "codeword selection over random LOS drops");
    add_array_options(sim_cmd, sim.array, false);
    add_oversampling_options(sim_cmd, sim.array);
    add_spacing_options(sim_cmd, sim.spacing);
    sim_cmd->add_option("--snr-db", sim.snr_db, "SNR points, dB ('inf' = noiseless)")->delimiter(',');
    sim_cmd->add_option("--drops", sim.drops)->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
    sim_cmd->add_flag("--restrict-evanescent", sim.restrict_evanescent, "exclude evanescent codewords");
    sim_cmd->add_option("--interference-db", sim.interference_db, "interferer power relative to the user, dB");
    sim_cmd->add_option("--heatmap-cap", sim.heatmap_cap, "count cap of the capped heatmap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (!fs::is_directory(dir)) throw RuntimeError("cannot create output directory " + dir.string());

        if (*mask_cmd) run_mask(mask, dir);
        else if (*pattern_cmd) run_pattern(pattern, dir);
        else if (*nf_cmd) run_nearfield(nearfield, dir);
        else if (*ray_cmd) run_rayleigh(rayleigh, dir);
        else if (*sim_cmd) run_simulate(sim, dir);
    } catch (const UsageError &e) {
        std::cerr << "evcb: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "evcb: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
