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

#include "evcb/evcb.h"

#include "evcb/classifier.hpp"
#include "evcb/codebook.hpp"
#include "evcb/export.hpp"
#include "evcb/geometry.hpp"
#include "evcb/linksim.hpp"
#include "evcb/pattern.hpp"
#include "evcb/rayleigh.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

using namespace evcb;

struct evcb_mask {
    EvanescentMask mask;
};

struct evcb_pattern {
    ArrayGeometry geometry;
    PatternGrid grid;
};

struct evcb_lobes {
    LobeReport report;
};

struct evcb_projection {
    CorrelationGrid grid;
    EvanescentMask mask;
};

struct evcb_rayleigh {
    FilteredBatch batch;
};

struct evcb_sim {
    SimConfig config;
    std::vector<SelectionStats> stats;
};

namespace {

thread_local std::string g_last_error;

evcb_status fail(evcb_status s, const char *msg) {
    g_last_error = msg;
    return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
evcb_status guarded(F &&f) {
    try {
        g_last_error.clear();
        f();
        return EVCB_OK;
    } catch (const Error &e) {
        return fail(static_cast<evcb_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc &) {
        return fail(EVCB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(EVCB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EVCB_ERR_INTERNAL, "unknown error");
    }
}

void need(const void *p, const char *what) {
    if (!p) throw Error(ErrorCode::invalid_argument, std::string("null pointer: ") + what);
}

CodebookConfig to_cpp(const evcb_codebook *cb) {
    need(cb, "codebook");
    CodebookConfig c{cb->n1, cb->n2, cb->o1, cb->o2};
    c.validate();
    return c;
}

ArrayGeometry to_cpp(const evcb_geometry *g) {
    need(g, "geometry");
    ArrayGeometry a{g->n1, g->n2, g->d1, g->d2, g->wavelength};
    a.validate();
    return a;
}

PatternOptions to_cpp(const evcb_pattern_options *o) {
    PatternOptions p;
    if (o) {
        p.theta_step_deg = o->theta_step_deg;
        p.phi_step_deg = o->phi_step_deg;
        p.radius = o->radius;
        p.allow_near_field = o->allow_near_field != 0;
    }
    return p;
}

LobeCriteria to_cpp(const evcb_lobe_criteria *c) {
    LobeCriteria l;
    if (c) {
        l.prominence_db = c->prominence_db;
        l.directional_margin_db = c->directional_margin_db;
        l.max_theta_deg = c->max_theta_deg;
    }
    return l;
}

std::vector<cplx> to_cpp(const evcb_complex *v, std::size_t len) {
    need(v, "vector");
    std::vector<cplx> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = {v[i].re, v[i].im};
    return out;
}

void copy_out(const std::vector<cplx> &v, evcb_complex *out, std::size_t len) {
    need(out, "output vector");
    if (len != v.size())
        throw Error(ErrorCode::shape, "output length " + std::to_string(len) + " != " + std::to_string(v.size()));
    for (std::size_t i = 0; i < len; ++i) out[i] = {v[i].real(), v[i].imag()};
}

void emit(const std::string &s, char **out) {
    need(out, "output string");
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
}

template <class T>
void set(T *p, T v) {
    if (p) *p = v;
}

const SelectionStats &point_of(const evcb_sim *s, std::size_t point) {
    need(s, "sim");
    if (point >= s->stats.size()) throw Error(ErrorCode::range, "SNR point out of range");
    return s->stats[point];
}

} // namespace

extern "C" {

const char *evcb_version(void) { return "0.1.0"; }

const char *evcb_last_error(void) { return g_last_error.c_str(); }

void evcb_string_free(char *s) { std::free(s); }

// ---- codebook --------------------------------------------------------------

evcb_status evcb_codeword(const evcb_codebook *cb, int l, int m, evcb_complex *out, size_t len) {
    return guarded([&] { copy_out(generate_codeword(to_cpp(cb), {l, m}).entries, out, len); });
}

evcb_status evcb_shift_index(const evcb_codebook *cb, int l, int m, int *l_shift, int *m_shift) {
    return guarded([&] {
        const ShiftedIndex s = shift_index(to_cpp(cb), {l, m});
        set(l_shift, s.l);
        set(m_shift, s.m);
    });
}

evcb_status evcb_unshift_index(const evcb_codebook *cb, int l_shift, int m_shift, int *l, int *m) {
    return guarded([&] {
        const CodewordIndex i = unshift_index(to_cpp(cb), {l_shift, m_shift});
        set(l, i.l);
        set(m, i.m);
    });
}

evcb_status evcb_nominal_gradients(const evcb_codebook *cb, int l, int m, double *k1, double *k2) {
    return guarded([&] {
        const auto [a, b] = nominal_phase_gradients(to_cpp(cb), {l, m});
        set(k1, a);
        set(k2, b);
    });
}

// ---- classifier ------------------------------------------------------------

evcb_status evcb_is_evanescent(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2, int *evanescent) {
    return guarded([&] {
        need(evanescent, "evanescent");
        *evanescent = is_evanescent(to_cpp(cb), {l, m}, alpha1, alpha2) ? 1 : 0;
    });
}

evcb_status evcb_beam_direction(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2, double *theta,
                                double *phi, int *evanescent) {
    return guarded([&] {
        const auto dir = beam_direction(to_cpp(cb), {l, m}, alpha1, alpha2);
        set(evanescent, dir ? 0 : 1);
        if (dir) {
            set(theta, dir->theta);
            set(phi, dir->phi);
        }
    });
}

evcb_status evcb_codeword_wavenumbers(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2, double k,
                                      double *kx, double *ky, double *kt) {
    return guarded([&] {
        const CodewordWavenumbers w = codeword_wavenumbers(to_cpp(cb), {l, m}, alpha1, alpha2, k);
        set(kx, w.kx);
        set(ky, w.ky);
        set(kt, w.kt);
    });
}

evcb_status evcb_nyquist(const evcb_geometry *g, double phi, double *ks_x, double *ks_y, double *supported_k) {
    return guarded([&] {
        const NyquistLimits n = nyquist_limits(to_cpp(g));
        set(ks_x, n.ks_x);
        set(ks_y, n.ks_y);
        set(supported_k, n.supported_k(phi));
    });
}

evcb_status evcb_normalized_spacing(double spacing_m, double freq_hz, double *alpha) {
    return guarded([&] {
        need(alpha, "alpha");
        if (!(spacing_m > 0.0) || !(freq_hz > 0.0))
            throw Error(ErrorCode::domain, "spacing and frequency must be positive");
        *alpha = spacing_m * freq_hz / kSpeedOfLight;
    });
}

evcb_status evcb_mask_build(const evcb_codebook *cb, double alpha1, double alpha2, evcb_mask **out) {
    return guarded([&] {
        need(out, "out");
        *out = new evcb_mask{build_mask(to_cpp(cb), alpha1, alpha2)};
    });
}

evcb_status evcb_mask_build_physical(const evcb_codebook *cb, double d1, double d2, double freq_hz, evcb_mask **out) {
    return guarded([&] {
        need(out, "out");
        const auto entries = wideband_masks(to_cpp(cb), d1, d2, freq_hz, {0.0});
        *out = new evcb_mask{entries.front().mask};
    });
}

evcb_status evcb_mask_flag(const evcb_mask *mask, int l, int m, int *evanescent) {
    return guarded([&] {
        need(mask, "mask");
        need(evanescent, "evanescent");
        *evanescent = mask->mask.flag({l, m}) ? 1 : 0;
    });
}

evcb_status evcb_mask_alpha(const evcb_mask *mask, double *alpha1, double *alpha2) {
    return guarded([&] {
        need(mask, "mask");
        set(alpha1, mask->mask.alpha1());
        set(alpha2, mask->mask.alpha2());
    });
}

evcb_status evcb_mask_stats(const evcb_mask *mask, size_t *total, size_t *evanescent, double *redundancy,
                            size_t *boundary) {
    return guarded([&] {
        need(mask, "mask");
        const ZoneStats s = redundancy_stats(mask->mask);
        set(total, s.total);
        set(evanescent, s.evanescent);
        set(redundancy, s.redundancy);
        set(boundary, mask->mask.count_boundary());
    });
}

evcb_status evcb_mask_csv(const evcb_mask *mask, char **out) {
    return guarded([&] {
        need(mask, "mask");
        emit(io::mask_csv(mask->mask), out);
    });
}

evcb_status evcb_mask_stats_json(const evcb_mask *mask, char **out) {
    return guarded([&] {
        need(mask, "mask");
        emit(io::stats_json(redundancy_stats(mask->mask)), out);
    });
}

void evcb_mask_free(evcb_mask *mask) { delete mask; }

// ---- geometry --------------------------------------------------------------

evcb_status evcb_los_channel(const evcb_geometry *g, double theta, double phi, evcb_complex *out, size_t len) {
    return guarded([&] { copy_out(los_channel(to_cpp(g), {theta, phi}).gains, out, len); });
}

evcb_status evcb_steering(const evcb_geometry *g, double kx, double ky, evcb_complex *out, size_t len) {
    return guarded([&] { copy_out(steering_from_wavenumbers(to_cpp(g), kx, ky).gains, out, len); });
}

evcb_status evcb_near_field_channel(const evcb_geometry *g, double r, double theta, double phi, evcb_complex *out,
                                    size_t len) {
    return guarded([&] { copy_out(near_field_channel(to_cpp(g), {r, theta, phi}).gains, out, len); });
}

evcb_status evcb_near_field_gradients(double k, double r, double theta, double phi, double x, double y, double *kx,
                                      double *ky, double *kt) {
    return guarded([&] {
        const LocalWavenumbers w = near_field_gradients(k, {r, theta, phi}, x, y);
        set(kx, w.kx);
        set(ky, w.ky);
        set(kt, w.kt);
    });
}

evcb_status evcb_dispersion_kz(double k, double kx, double ky, double *kz, int *propagating) {
    return guarded([&] {
        const DispersionResult d = dispersion_kz(k, kx, ky);
        set(kz, d.kz);
        set(propagating, d.propagating ? 1 : 0);
    });
}

evcb_status evcb_fresnel_range(double aperture, double wavelength, double *inner, double *outer) {
    return guarded([&] {
        const FresnelRange f = fresnel_range(aperture, wavelength);
        set(inner, f.inner);
        set(outer, f.outer);
    });
}

// ---- pattern ---------------------------------------------------------------

void evcb_pattern_options_default(evcb_pattern_options *opt) {
    if (!opt) return;
    const PatternOptions d;
    *opt = {d.theta_step_deg, d.phi_step_deg, d.radius, d.allow_near_field ? 1 : 0};
}

void evcb_lobe_criteria_default(evcb_lobe_criteria *crit) {
    if (!crit) return;
    const LobeCriteria d;
    *crit = {d.prominence_db, d.directional_margin_db, d.max_theta_deg};
}

evcb_status evcb_pattern_synthesize(const evcb_geometry *g, const evcb_complex *precoding, size_t len,
                                    const evcb_pattern_options *opt, evcb_pattern **out) {
    return guarded([&] {
        need(out, "out");
        const ArrayGeometry geom = to_cpp(g);
        const std::vector<cplx> w = to_cpp(precoding, len);
        *out = new evcb_pattern{geom, synthesize_pattern(geom, w, to_cpp(opt))};
    });
}

evcb_status evcb_pattern_size(const evcb_pattern *p, int *n_theta, int *n_phi, double *radius) {
    return guarded([&] {
        need(p, "pattern");
        set(n_theta, p->grid.n_theta);
        set(n_phi, p->grid.n_phi);
        set(radius, p->grid.radius);
    });
}

evcb_status evcb_pattern_power(const evcb_pattern *p, int i_theta, int j_phi, double *watts) {
    return guarded([&] {
        need(p, "pattern");
        need(watts, "watts");
        if (i_theta < 0 || i_theta >= p->grid.n_theta || j_phi < 0 || j_phi >= p->grid.n_phi)
            throw Error(ErrorCode::range, "pattern sample out of range");
        *watts = p->grid.at(i_theta, j_phi);
    });
}

evcb_status evcb_pattern_csv(const evcb_pattern *p, char **out) {
    return guarded([&] {
        need(p, "pattern");
        emit(io::pattern_csv(p->grid), out);
    });
}

evcb_status evcb_pattern_ascii(const evcb_pattern *p, char **out) {
    return guarded([&] {
        need(p, "pattern");
        emit(io::ascii_heatmap(p->grid), out);
    });
}

void evcb_pattern_free(evcb_pattern *p) { delete p; }

evcb_status evcb_lobes_analyze(const evcb_pattern *p, const evcb_lobe_criteria *crit, evcb_lobes **out) {
    return guarded([&] {
        need(p, "pattern");
        need(out, "out");
        *out = new evcb_lobes{analyze_lobes(p->grid, to_cpp(crit))};
    });
}

evcb_status evcb_lobes_peak(const evcb_lobes *r, double *theta, double *phi, double *power_dbw, double *gain_db,
                            int *directional) {
    return guarded([&] {
        need(r, "lobes");
        set(theta, r->report.peak_direction.theta);
        set(phi, r->report.peak_direction.phi);
        set(power_dbw, r->report.peak_power_dbw);
        set(gain_db, r->report.gain_db);
        set(directional, r->report.directional ? 1 : 0);
    });
}

size_t evcb_lobes_count(const evcb_lobes *r) { return r ? r->report.lobes.size() : 0; }

evcb_status evcb_lobes_get(const evcb_lobes *r, size_t i, evcb_lobe *out) {
    return guarded([&] {
        need(r, "lobes");
        need(out, "out");
        if (i >= r->report.lobes.size()) throw Error(ErrorCode::range, "lobe index out of range");
        const Lobe &l = r->report.lobes[i];
        *out = {l.direction.theta, l.direction.phi, l.power_dbw, l.prominence_db};
    });
}

evcb_status evcb_lobes_json(const evcb_lobes *r, char **out) {
    return guarded([&] {
        need(r, "lobes");
        emit(io::lobe_report_json(r->report), out);
    });
}

void evcb_lobes_free(evcb_lobes *r) { delete r; }

evcb_status evcb_interpolation_experiment(const evcb_codebook *cb, int l, int m, const double *alphas, size_t n,
                                          double reference_alpha, const evcb_pattern_options *opt,
                                          const evcb_lobe_criteria *crit, evcb_lobes **out) {
    return guarded([&] {
        need(alphas, "alphas");
        need(out, "out");
        const std::vector<double> a(alphas, alphas + n);
        auto runs = interpolation_experiment(to_cpp(cb), {l, m}, a, reference_alpha, to_cpp(opt), to_cpp(crit));
        std::vector<evcb_lobes *> made;
        made.reserve(runs.size());
        try {
            for (auto &run : runs) made.push_back(new evcb_lobes{std::move(run.report)});
        } catch (...) {
            for (evcb_lobes *p : made) delete p;
            throw;
        }
        for (std::size_t i = 0; i < made.size(); ++i) out[i] = made[i];
    });
}

// ---- projection ------------------------------------------------------------

evcb_status evcb_project_channel(const evcb_codebook *cb, const evcb_geometry *g, const evcb_complex *ch, size_t len,
                                 evcb_projection **out) {
    return guarded([&] {
        need(out, "out");
        const CodebookConfig cfg = to_cpp(cb);
        const ArrayGeometry geom = to_cpp(g);
        const ChannelVector h{geom, to_cpp(ch, len)};
        *out = new evcb_projection{project_channel(cfg, h), build_mask(cfg, geom.alpha1(), geom.alpha2())};
    });
}

evcb_status evcb_projection_value(const evcb_projection *p, int l, int m, double *value) {
    return guarded([&] {
        need(p, "projection");
        need(value, "value");
        check_index(p->grid.cfg, {l, m});
        *value = p->grid.at({l, m});
    });
}

evcb_status evcb_projection_zone_energy(const evcb_projection *p, double *regular, double *boundary,
                                        double *evanescent) {
    return guarded([&] {
        need(p, "projection");
        const ZoneEnergy e = zone_energy(p->grid, p->mask);
        set(regular, e.regular);
        set(boundary, e.boundary);
        set(evanescent, e.evanescent);
    });
}

evcb_status evcb_projection_csv(const evcb_projection *p, char **out) {
    return guarded([&] {
        need(p, "projection");
        emit(io::correlation_csv(p->grid, p->mask), out);
    });
}

evcb_status evcb_projection_zone_json(const evcb_projection *p, char **out) {
    return guarded([&] {
        need(p, "projection");
        emit(io::zone_energy_json(zone_energy(p->grid, p->mask)), out);
    });
}

void evcb_projection_free(evcb_projection *p) { delete p; }

// ---- Rayleigh --------------------------------------------------------------

evcb_status evcb_rayleigh_run(const evcb_rayleigh_config *cfg, evcb_rayleigh **out) {
    return guarded([&] {
        need(cfg, "config");
        need(out, "out");
        const RayleighConfig c{cfg->n1, cfg->n2, cfg->alpha1, cfg->alpha2, cfg->seed, cfg->realizations};
        *out = new evcb_rayleigh{filter_batch(c)};
    });
}

evcb_status evcb_rayleigh_summary(const evcb_rayleigh *r, double *mean, double *stddev) {
    return guarded([&] {
        need(r, "rayleigh");
        set(mean, r->batch.removed_mean);
        set(stddev, r->batch.removed_std);
    });
}

evcb_status evcb_rayleigh_csv(const evcb_rayleigh *r, int after, char **out) {
    return guarded([&] {
        need(r, "rayleigh");
        emit(io::channels_csv(after ? r->batch.after : r->batch.before), out);
    });
}

evcb_status evcb_rayleigh_summary_json(const evcb_rayleigh *r, char **out) {
    return guarded([&] {
        need(r, "rayleigh");
        emit(io::rayleigh_summary_json(r->batch), out);
    });
}

void evcb_rayleigh_free(evcb_rayleigh *r) { delete r; }

evcb_status evcb_filter_evanescent(int n1, int n2, double alpha1, double alpha2, const evcb_complex *in,
                                   evcb_complex *out, size_t len) {
    return guarded([&] {
        const ArrayGeometry geom = ArrayGeometry::from_alpha(n1, n2, alpha1, alpha2);
        if (len != geom.antennas()) throw Error(ErrorCode::shape, "channel length does not match n1*n2");
        const ChannelVector ch{geom, to_cpp(in, len)};
        copy_out(filter_evanescent(ch, alpha1, alpha2).gains, out, len);
    });
}

// ---- link simulation -------------------------------------------------------

evcb_status evcb_sim_run(const evcb_sim_config *cfg, evcb_sim **out) {
    return guarded([&] {
        need(cfg, "config");
        need(out, "out");
        SimConfig c;
        c.cfg = to_cpp(&cfg->codebook);
        c.geometry = to_cpp(&cfg->geometry);
        need(cfg->snr_db, "snr_db");
        c.snr_db_list.assign(cfg->snr_db, cfg->snr_db + cfg->n_snr);
        c.drops = cfg->drops;
        c.seed = cfg->seed;
        c.restrict_evanescent = cfg->restrict_evanescent != 0;
        if (cfg->has_interference) c.interference_power_db = cfg->interference_power_db;
        auto stats = run_drops(c);
        *out = new evcb_sim{std::move(c), std::move(stats)};
    });
}

size_t evcb_sim_points(const evcb_sim *s) { return s ? s->stats.size() : 0; }

evcb_status evcb_sim_result(const evcb_sim *s, size_t point, double *snr_db, double *evanescent_fraction,
                            double *throughput_proxy, size_t *evanescent_selections) {
    return guarded([&] {
        const SelectionStats &st = point_of(s, point);
        set(snr_db, st.snr_db);
        set(evanescent_fraction, st.evanescent_fraction);
        set(throughput_proxy, st.throughput_proxy);
        set(evanescent_selections, st.evanescent_selections);
    });
}

evcb_status evcb_sim_count(const evcb_sim *s, size_t point, int l, int m, size_t *count) {
    return guarded([&] {
        const SelectionStats &st = point_of(s, point);
        need(count, "count");
        check_index(st.cfg, {l, m});
        *count = st.count({l, m});
    });
}

evcb_status evcb_sim_stats_json(const evcb_sim *s, size_t point, char **out) {
    return guarded([&] { emit(io::selection_stats_json(point_of(s, point)), out); });
}

evcb_status evcb_sim_heatmap_csv(const evcb_sim *s, size_t point, size_t cap, int capped, char **out) {
    return guarded([&] {
        const SelectionStats &st = point_of(s, point);
        const Heatmap map = selection_heatmap(st, s->config.geometry.alpha1(), s->config.geometry.alpha2(), cap);
        emit(io::heatmap_csv(map, capped != 0), out);
    });
}

evcb_status evcb_sim_boundary_csv(const evcb_sim *s, size_t point, char **out) {
    return guarded([&] {
        const SelectionStats &st = point_of(s, point);
        const Heatmap map = selection_heatmap(st, s->config.geometry.alpha1(), s->config.geometry.alpha2());
        emit(io::boundary_csv(map), out);
    });
}

void evcb_sim_free(evcb_sim *s) { delete s; }

} // extern "C"
