// Copyright 2026 The zxe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the zxe library.
 *
 * Every function returns a zxe_status; on failure the thread's last error
 * message is available from zxe_last_error(). Objects returned through out
 * parameters belong to the caller and are released with the matching
 * zxe_*_free. Strings returned through char** are released with
 * zxe_string_free. Inputs are never modified. */
#ifndef ZXE_ZXE_H_
#define ZXE_ZXE_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ZXE_API __attribute__((visibility("default")))
#else
#define ZXE_API
#endif

typedef enum zxe_status {
  ZXE_OK = 0,
  ZXE_ERR_ARITY_MISMATCH = 1,
  ZXE_ERR_INVARIANT_VIOLATION = 2,
  ZXE_ERR_NOT_DAGGERABLE = 3,
  ZXE_ERR_BUDGET_EXCEEDED = 4,
  ZXE_ERR_HAS_DISCARD = 5,
  ZXE_ERR_SHAPE_MISMATCH = 6,
  ZXE_ERR_NOT_HERMITIAN_INPUT = 7,
  ZXE_ERR_MONAD_MISMATCH = 8,
  ZXE_ERR_INVALID_WEIGHTS = 9,
  ZXE_ERR_WRONG_RULE_CLASS = 10,
  ZXE_ERR_STALE_MATCH = 11,
  ZXE_ERR_SITE_INVALID = 12,
  ZXE_ERR_SOUNDNESS_VIOLATION = 13,
  ZXE_ERR_STEP_BUDGET_EXCEEDED = 14,
  ZXE_ERR_PARAM_OUT_OF_RANGE = 15,
  ZXE_ERR_UNSUPPORTED_SYMMETRY = 16,
  ZXE_ERR_NOT_SCALAR = 17,
  ZXE_ERR_NON_REAL_RESULT = 18,
  ZXE_ERR_PARSE = 19,
  ZXE_ERR_INVALID_ARGUMENT = 20,
  ZXE_ERR_INTERNAL = 100
} zxe_status;

typedef struct zxe_diagram zxe_diagram;
typedef struct zxe_sum zxe_sum;
typedef struct zxe_matrix zxe_matrix;

typedef enum zxe_policy { ZXE_POLICY_EXACT = 0, ZXE_POLICY_UP_TO_SCALAR = 1 } zxe_policy;
typedef enum zxe_monad { ZXE_MONAD_DISTRIBUTION = 0, ZXE_MONAD_MULTISET = 1 } zxe_monad;

typedef struct zxe_rewrite_options {
  int check_soundness; /* nonzero: verify each step numerically */
  zxe_policy policy;
  double tol;
} zxe_rewrite_options;

/* Message of the last failure on this thread ("" if none). */
ZXE_API const char* zxe_last_error(void);
ZXE_API const char* zxe_status_name(zxe_status status);
ZXE_API void zxe_string_free(char* s);
ZXE_API zxe_rewrite_options zxe_rewrite_options_default(void);

/* ---- diagrams ---- */
ZXE_API zxe_status zxe_diagram_from_json(const char* json, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_to_json(const zxe_diagram* d, char** out);
ZXE_API void zxe_diagram_free(zxe_diagram* d);

/* Phases are num/den multiples of pi. */
ZXE_API zxe_status zxe_diagram_z_spider(size_t n, size_t m, int64_t num, int64_t den, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_x_spider(size_t n, size_t m, int64_t num, int64_t den, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_hadamard(zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_identity(size_t wires, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_swap(zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_cup(zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_cap(zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_discard(zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_empty(zxe_diagram** out);

/* g after f. */
ZXE_API zxe_status zxe_diagram_compose(const zxe_diagram* f, const zxe_diagram* g, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_tensor(const zxe_diagram* f, const zxe_diagram* g, zxe_diagram** out);
ZXE_API zxe_status zxe_diagram_dagger(const zxe_diagram* f, zxe_diagram** out);

ZXE_API zxe_status zxe_diagram_arity(const zxe_diagram* d, size_t* in, size_t* out);
ZXE_API zxe_status zxe_diagram_node_count(const zxe_diagram* d, size_t* count);
ZXE_API zxe_status zxe_diagram_has_discard(const zxe_diagram* d, int* result);
ZXE_API zxe_status zxe_diagram_validate(const zxe_diagram* d);
ZXE_API zxe_status zxe_diagram_iso_equal(const zxe_diagram* a, const zxe_diagram* b, int* equal);

/* Standard interpretation (fails with HAS_DISCARD) and CP-map interpretation. */
ZXE_API zxe_status zxe_interpret(const zxe_diagram* d, zxe_matrix** out);
ZXE_API zxe_status zxe_interpret_cpm(const zxe_diagram* d, zxe_matrix** out);

/* ---- matrices ---- */
ZXE_API zxe_status zxe_matrix_from_json(const char* json, zxe_matrix** out);
ZXE_API zxe_status zxe_matrix_to_json(const zxe_matrix* m, char** out);
ZXE_API void zxe_matrix_free(zxe_matrix* m);
ZXE_API size_t zxe_matrix_rows(const zxe_matrix* m);
ZXE_API size_t zxe_matrix_cols(const zxe_matrix* m);
ZXE_API zxe_status zxe_matrix_get(const zxe_matrix* m, size_t row, size_t col, double* re, double* im);
/* Whether a = lambda * b within tol (lambda = 1 under the exact policy). */
ZXE_API zxe_status zxe_matrix_scalar_equal(const zxe_matrix* a, const zxe_matrix* b, zxe_policy policy,
                                           double tol, int* equal, double* lambda_re, double* lambda_im,
                                           double* residual);

/* ---- formal sums ---- */
ZXE_API zxe_status zxe_sum_from_json(const char* json, zxe_sum** out);
ZXE_API zxe_status zxe_sum_to_json(const zxe_sum* s, char** out);
ZXE_API void zxe_sum_free(zxe_sum* s);
/* Sets *is_sum when the document is a formal sum rather than a diagram. */
ZXE_API zxe_status zxe_json_is_sum(const char* json, int* is_sum);
ZXE_API zxe_status zxe_sum_dirac(const zxe_diagram* d, zxe_monad monad, zxe_sum** out);
ZXE_API zxe_status zxe_sum_size(const zxe_sum* s, size_t* size);
ZXE_API zxe_status zxe_sum_seq_compose(const zxe_sum* a, const zxe_sum* b, zxe_sum** out);
ZXE_API zxe_status zxe_sum_par_tensor(const zxe_sum* a, const zxe_sum* b, zxe_sum** out);
ZXE_API zxe_status zxe_sum_canonicalize(const zxe_sum* s, int semantic_merge, zxe_sum** out);
/* Superoperator for distribution sums (*is_superop = 1), matrix for multiset sums. */
ZXE_API zxe_status zxe_sum_evaluate(const zxe_sum* s, zxe_matrix** out, int* is_superop);

/* ---- rewriting ---- */
/* JSON array of the matches of rule (by name, e.g. "F", "Pi") in d. */
ZXE_API zxe_status zxe_find_matches(const zxe_diagram* d, const char* rule, int backward, char** json);
/* Applies match number `index` of find_matches; *trace gets one JSON line. */
ZXE_API zxe_status zxe_rewrite(const zxe_diagram* d, const char* rule, int backward, size_t index,
                               const zxe_rewrite_options* opts, zxe_diagram** out, char** trace);
/* *trace gets one JSON line per step, newline-terminated. On
 * STEP_BUDGET_EXCEEDED the partial result and trace are still returned. */
ZXE_API zxe_status zxe_simplify(const zxe_diagram* d, int fusion_only, size_t max_steps,
                                const zxe_rewrite_options* opts, zxe_diagram** out, char** trace);
/* Sum rules EC, EDelta, EPlus, EZero on the term in `json` (a sum, or a
 * diagram for backward EDelta). *result_json is the rewritten term. */
ZXE_API zxe_status zxe_rewrite_sum(const char* json, const char* rule, int backward, const size_t* branches,
                                   size_t n_branches, const zxe_rewrite_options* opts, char** result_json,
                                   char** trace);
/* ES (parallel = 0) or EP (parallel = 1) forward on the product of a and b. */
ZXE_API zxe_status zxe_rewrite_distribute(const zxe_sum* a, const zxe_sum* b, int parallel,
                                          const zxe_rewrite_options* opts, zxe_sum** out, char** trace);

/* ---- noise and symmetry verification ---- */
ZXE_API zxe_status zxe_depolarizing(double p, zxe_sum** out);
/* pauli is "X", "Y" or "Z". */
ZXE_API zxe_status zxe_gate_split(double alpha, const char* pauli, zxe_sum** out);
ZXE_API zxe_status zxe_sv_instance(const char* symmetry, double p, zxe_sum** out);
ZXE_API zxe_status zxe_acceptance_probability(const zxe_sum* instance, double* out);
/* Fills the three output arrays (length n) for the depolarizing sweep. */
ZXE_API zxe_status zxe_sv_sweep(const double* grid, size_t n, const char* symmetry, double* numeric,
                                double* closed_form, double* abs_error);
/* CSV "branch,weight,acceptance,contribution" for the instance at p. */
ZXE_API zxe_status zxe_sv_branch_report(double p, const char* symmetry, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* ZXE_ZXE_H_ */
