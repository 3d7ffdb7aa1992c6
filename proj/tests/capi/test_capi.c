/* SPDX-License-Identifier: Apache-2.0
 *
 * evcb - evanescent codeword analysis for Kronecker-product DFT codebooks
 * Copyright (C) 2026 The evcb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * Exercises the shared library from plain C.
 */

#include "evcb/evcb.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

#define EXPECT_OK(call) EXPECT((call) == EVCB_OK)

static const double kPi = 3.14159265358979323846;

static void test_codebook(void) {
    const evcb_codebook cb = {8, 8, 4, 4};
    evcb_complex w[64];
    int ls = 0, ms = 0, l = 0, m = 0;
    double k1 = 0, k2 = 0;

    EXPECT_OK(evcb_codeword(&cb, 4, 10, w, 64));
    EXPECT(fabs(atan2(w[8].im, w[8].re) - kPi / 4) < 1e-12);
    EXPECT(evcb_codeword(&cb, 4, 10, w, 63) == EVCB_ERR_SHAPE);
    EXPECT(evcb_codeword(&cb, 32, 0, w, 64) == EVCB_ERR_RANGE);
    EXPECT(strlen(evcb_last_error()) > 0);
    EXPECT(evcb_codeword(NULL, 0, 0, w, 64) == EVCB_ERR_INVALID_ARGUMENT);

    EXPECT_OK(evcb_shift_index(&cb, 17, 16, &ls, &ms));
    EXPECT(ls == -15 && ms == 16);
    EXPECT_OK(evcb_unshift_index(&cb, ls, ms, &l, &m));
    EXPECT(l == 17 && m == 16);
    EXPECT_OK(evcb_nominal_gradients(&cb, 4, 10, &k1, &k2));
    EXPECT(fabs(k2 - 5 * kPi / 8) < 1e-12);

    {
        const evcb_codebook bad = {0, 8, 4, 4};
        EXPECT(evcb_codeword(&bad, 0, 0, w, 64) == EVCB_ERR_INVALID_ARGUMENT);
    }
}

static void test_classifier(void) {
    const evcb_codebook cb = {8, 8, 4, 4};
    const evcb_geometry g = {8, 8, 0.5, 0.5, 1.0};
    evcb_mask *mask = NULL;
    size_t total = 0, ev = 0, boundary = 0;
    double red = 0, th = 0, ph = 0, kx, ky, kt, ksx, ksy, sup, a = 0;
    int flag = -1;
    char *text = NULL;

    EXPECT_OK(evcb_mask_build(&cb, 0.5, 0.5, &mask));
    EXPECT_OK(evcb_mask_stats(mask, &total, &ev, &red, &boundary));
    EXPECT(total == 1024 && ev == 229 && boundary == 2);
    EXPECT_OK(evcb_mask_flag(mask, 14, 16, &flag));
    EXPECT(flag == 1);
    EXPECT_OK(evcb_mask_csv(mask, &text));
    EXPECT(strncmp(text, "l,m,l_shift,m_shift,evanescent\n", 31) == 0);
    evcb_string_free(text);
    EXPECT_OK(evcb_mask_stats_json(mask, &text));
    EXPECT(strstr(text, "\"evanescent\": 229") != NULL);
    evcb_string_free(text);
    evcb_mask_free(mask);

    EXPECT_OK(evcb_mask_build_physical(&cb, 0.015, 0.015, 1.1e10, &mask));
    EXPECT_OK(evcb_mask_alpha(mask, &a, NULL));
    EXPECT(fabs(a - 0.015 * 1.1e10 / 299792458.0) < 1e-12);
    evcb_mask_free(mask);
    EXPECT(evcb_mask_build_physical(&cb, 0.015, 0.015, -1.0, &mask) == EVCB_ERR_DOMAIN);
    evcb_mask_free(NULL);

    EXPECT_OK(evcb_is_evanescent(&cb, 16, 0, 0.5, 0.5, &flag));
    EXPECT(flag == 0);
    EXPECT_OK(evcb_beam_direction(&cb, 4, 10, 0.5, 0.5, &th, &ph, &flag));
    EXPECT(flag == 0 && fabs(th * 180 / kPi - 42.3) < 0.05 && fabs(ph * 180 / kPi - 68.2) < 0.05);
    th = -1;
    EXPECT_OK(evcb_beam_direction(&cb, 14, 16, 0.5, 0.5, &th, &ph, &flag));
    EXPECT(flag == 1 && th == -1);
    EXPECT_OK(evcb_codeword_wavenumbers(&cb, 16, 0, 0.5, 0.5, 2 * kPi, &kx, &ky, &kt));
    EXPECT(fabs(kt - 2 * kPi) < 1e-12);
    EXPECT_OK(evcb_nyquist(&g, kPi / 4, &ksx, &ksy, &sup));
    EXPECT(fabs(sup - sqrt(2.0) * 2 * kPi) < 1e-9);
    EXPECT_OK(evcb_normalized_spacing(0.015, 1e10, &a));
    EXPECT(fabs(a - 0.015 * 1e10 / 299792458.0) < 1e-15);
}

static void test_geometry(void) {
    const evcb_geometry g = {4, 4, 0.5, 0.5, 1.0};
    evcb_complex h[16], s[16];
    double kz = 0, inner = 0, outer = 0, kx, ky, kt;
    int prop = 0, i;

    EXPECT_OK(evcb_los_channel(&g, 0.6, 1.2, h, 16));
    EXPECT_OK(evcb_steering(&g, 2 * kPi * sin(0.6) * cos(1.2), 2 * kPi * sin(0.6) * sin(1.2), s, 16));
    for (i = 0; i < 16; ++i) EXPECT(fabs(h[i].re - s[i].re) < 1e-12 && fabs(h[i].im + s[i].im) < 1e-12);
    EXPECT(evcb_los_channel(&g, 2.0, 0.0, h, 16) == EVCB_ERR_DOMAIN);
    EXPECT_OK(evcb_near_field_channel(&g, 5.0, 0.3, 0.2, h, 16));
    EXPECT(fabs(h[3].re * h[3].re + h[3].im * h[3].im - 1.0) < 1e-12);
    EXPECT_OK(evcb_near_field_gradients(2 * kPi, 1e6, 0.5, 0.7, 1.0, 2.0, &kx, &ky, &kt));
    EXPECT(fabs(kx - 2 * kPi * sin(0.5) * cos(0.7)) < 1e-3 * 2 * kPi);
    EXPECT_OK(evcb_dispersion_kz(1.0, 1.0, 1.0, &kz, &prop));
    EXPECT(prop == 0 && fabs(kz - 1.0) < 1e-12);
    EXPECT_OK(evcb_fresnel_range(1.0, 1.0, &inner, &outer));
    EXPECT(fabs(inner - 0.62) < 1e-12 && fabs(outer - 2.0) < 1e-12);
}

static void test_pattern(void) {
    const evcb_codebook cb = {8, 8, 4, 4};
    const evcb_geometry g = {8, 8, 0.5, 0.5, 1.0};
    evcb_complex w[64];
    evcb_pattern_options opt;
    evcb_pattern *p = NULL;
    evcb_lobes *lobes = NULL, *runs[2] = {NULL, NULL};
    evcb_lobe lobe;
    int nt = 0, np = 0, directional = -1;
    double radius = 0, th = 0, ph = 0, pw = 0, gain = 0, watts = 0;
    const double alphas[2] = {0.5, 0.4};
    char *text = NULL;

    evcb_pattern_options_default(&opt);
    EXPECT(opt.theta_step_deg == 0.5 && opt.radius == 0.0);
    opt.theta_step_deg = opt.phi_step_deg = 1.0;
    EXPECT_OK(evcb_codeword(&cb, 4, 10, w, 64));
    EXPECT_OK(evcb_pattern_synthesize(&g, w, 64, &opt, &p));
    EXPECT_OK(evcb_pattern_size(p, &nt, &np, &radius));
    EXPECT(nt == 91 && np == 360 && radius > 0);
    EXPECT_OK(evcb_pattern_power(p, 42, 68, &watts));
    EXPECT(watts > 0);
    EXPECT(evcb_pattern_power(p, 91, 0, &watts) == EVCB_ERR_RANGE);
    EXPECT_OK(evcb_lobes_analyze(p, NULL, &lobes));
    EXPECT_OK(evcb_lobes_peak(lobes, &th, &ph, &pw, &gain, &directional));
    EXPECT(directional == 1 && fabs(th * 180 / kPi - 42.3) < 1 && fabs(ph * 180 / kPi - 68.2) < 1);
    EXPECT(evcb_lobes_count(lobes) >= 1);
    EXPECT_OK(evcb_lobes_get(lobes, 0, &lobe));
    EXPECT(lobe.power_dbw <= pw + 1e-9);
    EXPECT(evcb_lobes_get(lobes, 100000, &lobe) == EVCB_ERR_RANGE);
    EXPECT_OK(evcb_lobes_json(lobes, &text));
    EXPECT(strstr(text, "\"directional\": true") != NULL);
    evcb_string_free(text);
    EXPECT_OK(evcb_pattern_csv(p, &text));
    EXPECT(strncmp(text, "theta_deg,phi_deg,power_dbw\n", 28) == 0);
    evcb_string_free(text);
    EXPECT_OK(evcb_pattern_ascii(p, &text));
    EXPECT(strchr(text, '@') != NULL);
    evcb_string_free(text);
    evcb_lobes_free(lobes);
    evcb_pattern_free(p);

    EXPECT(evcb_pattern_synthesize(&g, w, 63, &opt, &p) == EVCB_ERR_SHAPE);
    opt.radius = 1.0;
    EXPECT(evcb_pattern_synthesize(&g, w, 64, &opt, &p) == EVCB_ERR_DOMAIN);

    opt.radius = 0.0;
    opt.theta_step_deg = opt.phi_step_deg = 2.0;
    EXPECT_OK(evcb_interpolation_experiment(&cb, 4, 10, alphas, 2, 0.5, &opt, NULL, runs));
    EXPECT(runs[0] != NULL && runs[1] != NULL);
    evcb_lobes_free(runs[0]);
    evcb_lobes_free(runs[1]);
}

static void test_projection_rayleigh(void) {
    const evcb_codebook cb = {4, 4, 1, 1};
    const evcb_geometry g = {4, 4, 0.5, 0.5, 1.0};
    const evcb_rayleigh_config rc = {8, 8, 0.5, 0.5, 7, 2000};
    evcb_complex ones[16], out[16];
    evcb_projection *proj = NULL;
    evcb_rayleigh *r = NULL;
    double v = 0, reg = 0, bnd = 0, eva = 0, mean = 0, sd = 0;
    char *text = NULL;
    int i;

    for (i = 0; i < 16; ++i) ones[i].re = 1.0, ones[i].im = 0.0;
    EXPECT_OK(evcb_project_channel(&cb, &g, ones, 16, &proj));
    EXPECT_OK(evcb_projection_value(proj, 0, 0, &v));
    EXPECT(fabs(v - 1.0) < 1e-12);
    EXPECT(evcb_projection_value(proj, 4, 0, &v) == EVCB_ERR_RANGE);
    EXPECT_OK(evcb_projection_zone_energy(proj, &reg, &bnd, &eva));
    EXPECT(fabs(reg - 1.0) < 1e-12);
    EXPECT_OK(evcb_projection_csv(proj, &text));
    evcb_string_free(text);
    EXPECT_OK(evcb_projection_zone_json(proj, &text));
    evcb_string_free(text);
    evcb_projection_free(proj);

    EXPECT_OK(evcb_filter_evanescent(4, 4, 0.5, 0.5, ones, out, 16));
    for (i = 0; i < 16; ++i) EXPECT(fabs(out[i].re - 1.0) < 1e-12);
    EXPECT(evcb_filter_evanescent(4, 4, 0.5, 0.5, ones, out, 15) == EVCB_ERR_SHAPE);

    EXPECT_OK(evcb_rayleigh_run(&rc, &r));
    EXPECT_OK(evcb_rayleigh_summary(r, &mean, &sd));
    EXPECT(fabs(mean - 17.0 / 64.0) < 0.02);
    EXPECT_OK(evcb_rayleigh_csv(r, 1, &text));
    EXPECT(strncmp(text, "realization,n1,n2,re,im\n", 24) == 0);
    evcb_string_free(text);
    EXPECT_OK(evcb_rayleigh_summary_json(r, &text));
    evcb_string_free(text);
    evcb_rayleigh_free(r);
}

static void test_sim(void) {
    const double snr[2] = {-10.0, INFINITY};
    evcb_sim_config cfg;
    evcb_sim *s = NULL, *s2 = NULL;
    double snr0 = 0, frac = 0, tp = 0, frac2 = 0;
    size_t sel = 0, count = 0, l, m, total = 0;
    char *text = NULL;

    memset(&cfg, 0, sizeof cfg);
    cfg.codebook = (evcb_codebook){8, 8, 4, 4};
    cfg.geometry = (evcb_geometry){8, 8, 0.5, 0.5, 1.0};
    cfg.snr_db = snr;
    cfg.n_snr = 2;
    cfg.drops = 300;
    cfg.seed = 4;
    EXPECT_OK(evcb_sim_run(&cfg, &s));
    EXPECT(evcb_sim_points(s) == 2);
    EXPECT_OK(evcb_sim_result(s, 0, &snr0, &frac, &tp, &sel));
    EXPECT(snr0 == -10.0 && frac >= 0 && frac <= 1 && tp > 0);
    for (l = 0; l < 32; ++l)
        for (m = 0; m < 32; ++m) {
            EXPECT_OK(evcb_sim_count(s, 0, (int)l, (int)m, &count));
            total += count;
        }
    EXPECT(total == 300);
    EXPECT(evcb_sim_result(s, 2, NULL, NULL, NULL, NULL) == EVCB_ERR_RANGE);
    EXPECT_OK(evcb_sim_stats_json(s, 1, &text));
    EXPECT(strstr(text, "\"snr_db\": null") != NULL);
    evcb_string_free(text);
    EXPECT_OK(evcb_sim_heatmap_csv(s, 0, 5, 1, &text));
    EXPECT(strncmp(text, "l,m,count\n", 10) == 0);
    evcb_string_free(text);
    EXPECT_OK(evcb_sim_boundary_csv(s, 0, &text));
    evcb_string_free(text);

    EXPECT_OK(evcb_sim_run(&cfg, &s2));
    EXPECT_OK(evcb_sim_result(s2, 0, NULL, &frac2, NULL, NULL));
    EXPECT(frac2 == frac);
    evcb_sim_free(s2);
    evcb_sim_free(s);

    cfg.drops = 0;
    EXPECT(evcb_sim_run(&cfg, &s) == EVCB_ERR_INVALID_ARGUMENT);
}

int main(void) {
    EXPECT(strlen(evcb_version()) > 0);
    test_codebook();
    test_classifier();
    test_geometry();
    test_pattern();
    test_projection_rayleigh();
    test_sim();
    if (failures) {
        fprintf(stderr, "%d failure(s)\n", failures);
        return 1;
    }
    printf("capi: all checks passed\n");
    return 0;
}
