/*
 * Copyright 2026 The latcount Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * latcount: lattice point counting in aligned boxes, the nu function,
 * successive minima, dual lattices and the Diophantine application.
 *
 * Conventions
 *   - Every function returning latc_status writes its output only on
 *     LATC_OK. On failure latc_last_error(ctx) describes the problem.
 *   - Scalars cross the boundary as decimal strings ("0.5", "3/7", "1e-3")
 *     and are parsed at the context precision. Matrices and vectors are
 *     JSON arrays of such strings (numbers are accepted too).
 *   - Results are owned by the caller and released with latc_result_free.
 *     Strings returned by a result live as long as the result.
 *   - Precision is process-wide in the underlying arithmetic: contexts with
 *     different precisions must not be used from concurrent threads.
 */

#ifndef LATCOUNT_LATCOUNT_H
#define LATCOUNT_LATCOUNT_H

#include <stdint.h>

#if defined(LATC_BUILDING_LIBRARY)
#define LATC_API __attribute__((visibility("default")))
#else
#define LATC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum latc_status {
    LATC_OK = 0,
    LATC_ERR_INPUT = 1,      /* malformed or out-of-domain input */
    LATC_ERR_DEGENERATE = 2, /* singular lattice, nu = 0, not weakly admissible */
    LATC_ERR_BUDGET = 3,     /* enumeration or counting budget exhausted */
    LATC_ERR_PRECISION = 4,  /* working precision insufficient */
    LATC_ERR_INTERNAL = 5
} latc_status;

typedef struct latc_context latc_context;
typedef struct latc_lattice latc_lattice;
typedef struct latc_box latc_box;
typedef struct latc_result latc_result;

LATC_API const char* latc_version(void);

/* digits: significant decimal digits, at least 30. 0 selects 50. */
LATC_API latc_status latc_context_new(unsigned digits, latc_context** out);
LATC_API void latc_context_free(latc_context* ctx);
LATC_API unsigned latc_context_digits(const latc_context* ctx);
/* 0 keeps the current value. */
LATC_API latc_status latc_context_set_budgets(latc_context* ctx, uint64_t enumeration_nodes, uint64_t box_candidates);
/* 0 selects the available hardware parallelism. */
LATC_API latc_status latc_context_set_workers(latc_context* ctx, unsigned workers);
/* JSON object embedded verbatim in every report ("config"); its "seed" key
 * is also echoed at the top level. */
LATC_API latc_status latc_context_set_run_config(latc_context* ctx, const char* json);
LATC_API const char* latc_last_error(const latc_context* ctx);

/* Lattices: columns of the basis generate the lattice. */
LATC_API latc_status latc_lattice_parse(latc_context* ctx, const char* matrix_json, latc_lattice** out);
LATC_API latc_status latc_lattice_dual(latc_context* ctx, const latc_lattice* lattice, latc_lattice** out);
LATC_API latc_status latc_lattice_example31(latc_context* ctx, int n, uint64_t seed, latc_lattice** out);
/* A = alpha^(-1/2) [[1, alpha], [1, 2 alpha]] with its box
 * alpha^(-1/2) ([y, y + eps] x [y, y + alpha t]). alpha is "surd:a,b,c,d"
 * or "dec:<digits>". */
LATC_API latc_status latc_lattice_application(latc_context* ctx, const char* alpha, const char* y, const char* eps,
                                              const char* t, latc_lattice** lattice, latc_box** box);
LATC_API int latc_lattice_dim(const latc_lattice* lattice);
LATC_API int latc_lattice_is_unimodular(const latc_lattice* lattice);
LATC_API latc_status latc_lattice_describe(latc_context* ctx, const latc_lattice* lattice, latc_result** out);
LATC_API void latc_lattice_free(latc_lattice* lattice);

/* Box diag(t) [0,1]^n + y, closed. y_json may be NULL for y = 0. */
LATC_API latc_status latc_box_parse(latc_context* ctx, const char* t_json, const char* y_json, latc_box** out);
LATC_API void latc_box_free(latc_box* box);

/* Computations. Optional string arguments may be NULL for their default. */
LATC_API latc_status latc_nu(latc_context* ctx, const latc_lattice* lattice, const char* rho, latc_result** out);
/* Geometric grid of `points` radii from 1.01 gamma_n^(1/2) to rho_max.
 * Flagged when some minimizer has a zero coordinate. */
LATC_API latc_status latc_nu_probe(latc_context* ctx, const latc_lattice* lattice, const char* rho_max,
                                   unsigned points, latc_result** out);
LATC_API latc_status latc_count(latc_context* ctx, const latc_lattice* lattice, const latc_box* box,
                                latc_result** out);
/* rho NULL: max(vol^(2-2/n), 1.01 gamma_n^(1/2)). */
LATC_API latc_status latc_bound(latc_context* ctx, const latc_lattice* lattice, const latc_box* box, const char* rho,
                                latc_result** out);
/* unit_box must have volume 1; counts in t * unit_box. rho NULL as above
 * for the dilated box. */
LATC_API latc_status latc_bound_homogeneous(latc_context* ctx, const latc_lattice* lattice, const latc_box* unit_box,
                                            const char* t, const char* rho, latc_result** out);
LATC_API latc_status latc_s_sum(latc_context* ctx, const latc_lattice* lattice, const char* r, latc_result** out);
LATC_API latc_status latc_dual_compare(latc_context* ctx, const latc_lattice* lattice, const char* rho_max,
                                       unsigned points, latc_result** out);
/* Builds the lattice and probes both it and its dual up to rho_max.
 * Flagged when the dual probe finds a zero coordinate. */
LATC_API latc_status latc_example31(latc_context* ctx, int n, uint64_t seed, const char* rho_max, unsigned points,
                                    latc_result** out);
/* Counting function, phi evidence up to q_max, and the error bound. */
LATC_API latc_status latc_dio(latc_context* ctx, const char* alpha, const char* y, const char* eps, const char* t,
                              const char* q_max, latc_result** out);
/* t_list_json: JSON array of t values. Rows are sorted by t. */
LATC_API latc_status latc_dio_sweep(latc_context* ctx, const char* alpha, const char* y, const char* eps,
                                    const char* t_list_json, const char* q_max, latc_result** out);

/* Results. */
LATC_API const char* latc_result_json(const latc_result* result);
LATC_API const char* latc_result_csv(const latc_result* result);
LATC_API int latc_result_flagged(const latc_result* result);
/* Top-level scalar of the result as a string; NULL if absent. */
LATC_API const char* latc_result_scalar(const latc_result* result, const char* key);
LATC_API void latc_result_free(latc_result* result);

#ifdef __cplusplus
}
#endif

#endif /* LATCOUNT_LATCOUNT_H */
