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
 * C interface of libevcb.
 *
 * Every fallible call returns an evcb_status; on failure the message is
 * available from evcb_last_error() on the same thread until the next call.
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Text exports are returned as NUL-terminated strings owned by
 * the caller and released with evcb_string_free().
 *
 * Angles are radians. Index grids are l-major. Complex vectors use the
 * x-major antenna order: element (i, k) is at offset i * n2 + k.
 */

#ifndef EVCB_H
#define EVCB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EVCB_BUILDING)
#    define EVCB_API __declspec(dllexport)
#  else
#    define EVCB_API __declspec(dllimport)
#  endif
#else
#  define EVCB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evcb_status {
    EVCB_OK = 0,
    EVCB_ERR_INVALID_ARGUMENT = 1,
    EVCB_ERR_RANGE = 2,
    EVCB_ERR_DOMAIN = 3,
    EVCB_ERR_SHAPE = 4,
    EVCB_ERR_IO = 5,
    EVCB_ERR_INTERNAL = 99
} evcb_status;

typedef struct evcb_complex {
    double re;
    double im;
} evcb_complex;

typedef struct evcb_codebook {
    int n1, n2; /* antennas along x, y */
    int o1, o2; /* oversampling along x, y */
} evcb_codebook;

typedef struct evcb_geometry {
    int n1, n2;
    double d1, d2;     /* spacing, m */
    double wavelength; /* m */
} evcb_geometry;

EVCB_API const char *evcb_version(void);
EVCB_API const char *evcb_last_error(void);
EVCB_API void evcb_string_free(char *s);

/* ---- codebook ---------------------------------------------------------- */

/* out must hold n1*n2 entries. */
EVCB_API evcb_status evcb_codeword(const evcb_codebook *cb, int l, int m, evcb_complex *out, size_t len);
EVCB_API evcb_status evcb_shift_index(const evcb_codebook *cb, int l, int m, int *l_shift, int *m_shift);
EVCB_API evcb_status evcb_unshift_index(const evcb_codebook *cb, int l_shift, int m_shift, int *l, int *m);
EVCB_API evcb_status evcb_nominal_gradients(const evcb_codebook *cb, int l, int m, double *k1, double *k2);

/* ---- classifier -------------------------------------------------------- */

EVCB_API evcb_status evcb_is_evanescent(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2,
                                        int *evanescent);
/* *evanescent = 1 marks an evanescent codeword; theta/phi are then left untouched. */
EVCB_API evcb_status evcb_beam_direction(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2,
                                         double *theta, double *phi, int *evanescent);
EVCB_API evcb_status evcb_codeword_wavenumbers(const evcb_codebook *cb, int l, int m, double alpha1, double alpha2,
                                               double k, double *kx, double *ky, double *kt);
EVCB_API evcb_status evcb_nyquist(const evcb_geometry *g, double phi, double *ks_x, double *ks_y,
                                  double *supported_k);
/* alpha = d * f / c */
EVCB_API evcb_status evcb_normalized_spacing(double spacing_m, double freq_hz, double *alpha);

typedef struct evcb_mask evcb_mask;

EVCB_API evcb_status evcb_mask_build(const evcb_codebook *cb, double alpha1, double alpha2, evcb_mask **out);
EVCB_API evcb_status evcb_mask_build_physical(const evcb_codebook *cb, double d1, double d2, double freq_hz,
                                              evcb_mask **out);
EVCB_API evcb_status evcb_mask_flag(const evcb_mask *mask, int l, int m, int *evanescent);
EVCB_API evcb_status evcb_mask_alpha(const evcb_mask *mask, double *alpha1, double *alpha2);
/* boundary: cells exactly on the ellipse (counted regular). Any pointer may be NULL. */
EVCB_API evcb_status evcb_mask_stats(const evcb_mask *mask, size_t *total, size_t *evanescent, double *redundancy,
                                     size_t *boundary);
EVCB_API evcb_status evcb_mask_csv(const evcb_mask *mask, char **out);
EVCB_API evcb_status evcb_mask_stats_json(const evcb_mask *mask, char **out);
EVCB_API void evcb_mask_free(evcb_mask *mask);

/* ---- geometry / channels ---------------------------------------------- */

EVCB_API evcb_status evcb_los_channel(const evcb_geometry *g, double theta, double phi, evcb_complex *out,
                                      size_t len);
EVCB_API evcb_status evcb_steering(const evcb_geometry *g, double kx, double ky, evcb_complex *out, size_t len);
EVCB_API evcb_status evcb_near_field_channel(const evcb_geometry *g, double r, double theta, double phi,
                                             evcb_complex *out, size_t len);
EVCB_API evcb_status evcb_near_field_gradients(double k, double r, double theta, double phi, double x, double y,
                                               double *kx, double *ky, double *kt);
EVCB_API evcb_status evcb_dispersion_kz(double k, double kx, double ky, double *kz, int *propagating);
EVCB_API evcb_status evcb_fresnel_range(double aperture, double wavelength, double *inner, double *outer);

/* ---- pattern ----------------------------------------------------------- */

typedef struct evcb_pattern_options {
    double theta_step_deg;
    double phi_step_deg;
    double radius; /* m; 0 = 10x outer Fresnel bound */
    int allow_near_field;
} evcb_pattern_options;

typedef struct evcb_lobe_criteria {
    double prominence_db;
    double directional_margin_db;
    double max_theta_deg;
} evcb_lobe_criteria;

typedef struct evcb_lobe {
    double theta;
    double phi;
    double power_dbw;
    double prominence_db;
} evcb_lobe;

typedef struct evcb_pattern evcb_pattern;
typedef struct evcb_lobes evcb_lobes;

EVCB_API void evcb_pattern_options_default(evcb_pattern_options *opt);
EVCB_API void evcb_lobe_criteria_default(evcb_lobe_criteria *crit);

/* opt may be NULL for defaults. */
EVCB_API evcb_status evcb_pattern_synthesize(const evcb_geometry *g, const evcb_complex *precoding, size_t len,
                                             const evcb_pattern_options *opt, evcb_pattern **out);
EVCB_API evcb_status evcb_pattern_size(const evcb_pattern *p, int *n_theta, int *n_phi, double *radius);
EVCB_API evcb_status evcb_pattern_power(const evcb_pattern *p, int i_theta, int j_phi, double *watts);
EVCB_API evcb_status evcb_pattern_csv(const evcb_pattern *p, char **out);
EVCB_API evcb_status evcb_pattern_ascii(const evcb_pattern *p, char **out);
EVCB_API void evcb_pattern_free(evcb_pattern *p);

/* crit may be NULL for defaults. */
EVCB_API evcb_status evcb_lobes_analyze(const evcb_pattern *p, const evcb_lobe_criteria *crit, evcb_lobes **out);
EVCB_API evcb_status evcb_lobes_peak(const evcb_lobes *r, double *theta, double *phi, double *power_dbw,
                                     double *gain_db, int *directional);
EVCB_API size_t evcb_lobes_count(const evcb_lobes *r);
EVCB_API evcb_status evcb_lobes_get(const evcb_lobes *r, size_t i, evcb_lobe *out);
EVCB_API evcb_status evcb_lobes_json(const evcb_lobes *r, char **out);
EVCB_API void evcb_lobes_free(evcb_lobes *r);

/* Applies codeword (l, m)'s physical gradients on the reference spacing to
 * arrays of spacing alphas[i]; out[i] receives one lobe report per spacing. */
EVCB_API evcb_status evcb_interpolation_experiment(const evcb_codebook *cb, int l, int m, const double *alphas,
                                                   size_t n, double reference_alpha, const evcb_pattern_options *opt,
                                                   const evcb_lobe_criteria *crit, evcb_lobes **out);

/* ---- near-field projection --------------------------------------------- */

typedef struct evcb_projection evcb_projection;

/* Zones are classified with the geometry's normalized spacings. */
EVCB_API evcb_status evcb_project_channel(const evcb_codebook *cb, const evcb_geometry *g, const evcb_complex *ch,
                                          size_t len, evcb_projection **out);
EVCB_API evcb_status evcb_projection_value(const evcb_projection *p, int l, int m, double *value);
EVCB_API evcb_status evcb_projection_zone_energy(const evcb_projection *p, double *regular, double *boundary,
                                                 double *evanescent);
EVCB_API evcb_status evcb_projection_csv(const evcb_projection *p, char **out);
EVCB_API evcb_status evcb_projection_zone_json(const evcb_projection *p, char **out);
EVCB_API void evcb_projection_free(evcb_projection *p);

/* ---- Rayleigh ------------------------------------------------------------ */

typedef struct evcb_rayleigh_config {
    int n1, n2;
    double alpha1, alpha2;
    uint64_t seed;
    size_t realizations;
} evcb_rayleigh_config;

typedef struct evcb_rayleigh evcb_rayleigh;

EVCB_API evcb_status evcb_rayleigh_run(const evcb_rayleigh_config *cfg, evcb_rayleigh **out);
EVCB_API evcb_status evcb_rayleigh_summary(const evcb_rayleigh *r, double *mean, double *stddev);
/* after = 0 exports the raw channels, 1 the filtered ones. */
EVCB_API evcb_status evcb_rayleigh_csv(const evcb_rayleigh *r, int after, char **out);
EVCB_API evcb_status evcb_rayleigh_summary_json(const evcb_rayleigh *r, char **out);
EVCB_API void evcb_rayleigh_free(evcb_rayleigh *r);

/* In-place safe (in == out allowed). len must be n1*n2. */
EVCB_API evcb_status evcb_filter_evanescent(int n1, int n2, double alpha1, double alpha2, const evcb_complex *in,
                                            evcb_complex *out, size_t len);

/* ---- link simulation ---------------------------------------------------- */

typedef struct evcb_sim_config {
    evcb_codebook codebook;
    evcb_geometry geometry;
    const double *snr_db; /* +INFINITY = noiseless */
    size_t n_snr;
    size_t drops;
    uint64_t seed;
    int restrict_evanescent;
    int has_interference;
    double interference_power_db;
} evcb_sim_config;

typedef struct evcb_sim evcb_sim;

EVCB_API evcb_status evcb_sim_run(const evcb_sim_config *cfg, evcb_sim **out);
EVCB_API size_t evcb_sim_points(const evcb_sim *s);
EVCB_API evcb_status evcb_sim_result(const evcb_sim *s, size_t point, double *snr_db, double *evanescent_fraction,
                                     double *throughput_proxy, size_t *evanescent_selections);
EVCB_API evcb_status evcb_sim_count(const evcb_sim *s, size_t point, int l, int m, size_t *count);
EVCB_API evcb_status evcb_sim_stats_json(const evcb_sim *s, size_t point, char **out);
EVCB_API evcb_status evcb_sim_heatmap_csv(const evcb_sim *s, size_t point, size_t cap, int capped, char **out);
EVCB_API evcb_status evcb_sim_boundary_csv(const evcb_sim *s, size_t point, char **out);
EVCB_API void evcb_sim_free(evcb_sim *s);

#ifdef __cplusplus
}
#endif

#endif /* EVCB_H */
