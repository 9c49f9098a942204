/*
 * Copyright 2026 The tadj Authors
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

/* C interface to the tadj transform-adjustment library. Every function
 * returns a tadj_status; on failure tadj_last_error() describes the problem
 * for the calling thread. Objects returned through out-parameters are owned
 * by the caller and released with the matching *_free function. */

#ifndef TADJ_TADJ_H
#define TADJ_TADJ_H

#include <stddef.h>
#include <stdint.h>

#if defined(TADJ_BUILDING_LIBRARY)
#define TADJ_API __attribute__((visibility("default")))
#else
#define TADJ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tadj_status {
  TADJ_OK = 0,
  TADJ_ERR_INVALID_ARGUMENT = 1,
  TADJ_ERR_INVALID_DIMENSION = 2,
  TADJ_ERR_KIND_MISMATCH = 3,
  TADJ_ERR_SHAPE = 4,
  TADJ_ERR_SCHEDULE = 5,
  TADJ_ERR_PATTERN = 6,
  TADJ_ERR_CONFIGURATION = 7,
  TADJ_ERR_MODEL = 8,
  TADJ_ERR_PARSE = 9,
  TADJ_ERR_IO = 10,
  TADJ_ERR_INTERNAL = 11
} tadj_status;

typedef enum tadj_kind {
  TADJ_DCT2 = 0,
  TADJ_DCT3 = 1,
  TADJ_DST2 = 2,
  TADJ_DST3 = 3,
  TADJ_DST7 = 4,
  TADJ_DCT8 = 5
} tadj_kind;

typedef enum tadj_side { TADJ_PRE = 0, TADJ_POST = 1 } tadj_side;

typedef enum tadj_model { TADJ_MODEL_AR1 = 0, TADJ_MODEL_ONE_SIDED = 1 } tadj_model;

typedef struct tadj_text tadj_text;
typedef struct tadj_matrix tadj_matrix;
typedef struct tadj_adjustment tadj_adjustment;
typedef struct tadj_pipeline tadj_pipeline;

/* Optimizer settings. alpha <= 0 selects the default ln(100)/N. */
typedef struct tadj_design_config {
  double alpha;
  int max_iterations;
  double tolerance;
  int restarts;
  uint64_t seed;
  double sparsity_epsilon;
} tadj_design_config;

typedef struct tadj_bench_config {
  int samples;
  int warmup;
  double min_sample_seconds;
  int blocks;
  uint64_t seed;
} tadj_bench_config;

typedef struct tadj_op_count {
  int64_t multiplications;
  int64_t additions;
  int64_t coefficients;
} tadj_op_count;

typedef struct tadj_design_stats {
  double objective;
  double identity_objective;
  int converged;
  int sweeps;
} tadj_design_stats;

TADJ_API const char* tadj_version(void);
TADJ_API const char* tadj_status_string(tadj_status status);
TADJ_API const char* tadj_last_error(void);

/* Text buffers (may hold binary PGM data; use tadj_text_size). */
TADJ_API const char* tadj_text_data(const tadj_text* text);
TADJ_API size_t tadj_text_size(const tadj_text* text);
TADJ_API void tadj_text_free(tadj_text* text);

TADJ_API tadj_status tadj_kind_parse(const char* name, tadj_kind* out);
TADJ_API const char* tadj_kind_name(tadj_kind kind);
TADJ_API tadj_status tadj_side_parse(const char* name, tadj_side* out);

/* Matrices (row-major access). */
TADJ_API tadj_status tadj_matrix_build(tadj_kind kind, int size, tadj_matrix** out);
TADJ_API tadj_status tadj_matrix_create(int rows, int cols, const double* data,
                                        tadj_matrix** out);
TADJ_API tadj_status tadj_matrix_parse(const char* text, tadj_matrix** out);
TADJ_API tadj_status tadj_matrix_read(const char* path, tadj_matrix** out);
TADJ_API tadj_status tadj_matrix_write(const tadj_matrix* m, const char* path);
TADJ_API tadj_status tadj_matrix_format(const tadj_matrix* m, tadj_text** out);
TADJ_API int tadj_matrix_rows(const tadj_matrix* m);
TADJ_API int tadj_matrix_cols(const tadj_matrix* m);
TADJ_API tadj_status tadj_matrix_get(const tadj_matrix* m, double* data);
TADJ_API void tadj_matrix_free(tadj_matrix* m);

/* Adjustment design. pattern is "band:K", "subblock:B" or "dense". */
TADJ_API void tadj_design_config_default(tadj_design_config* config);
TADJ_API tadj_status tadj_adjustment_design(tadj_kind base, tadj_kind target, int size,
                                            const char* pattern, tadj_side side,
                                            const tadj_design_config* config,
                                            tadj_adjustment** out);
TADJ_API tadj_status tadj_adjustment_from_dst7(const tadj_adjustment* dst7,
                                               tadj_adjustment** out);
TADJ_API tadj_status tadj_adjustment_parse(const char* text, tadj_adjustment** out);
TADJ_API tadj_status tadj_adjustment_read(const char* path, tadj_adjustment** out);
TADJ_API tadj_status tadj_adjustment_write(const tadj_adjustment* adj, const char* path);
TADJ_API tadj_status tadj_adjustment_format(const tadj_adjustment* adj, tadj_text** out);
TADJ_API tadj_status tadj_adjustment_summary(const tadj_adjustment* adj, tadj_text** out);
TADJ_API tadj_status tadj_adjustment_stats(const tadj_adjustment* adj, tadj_design_stats* out);
TADJ_API int tadj_adjustment_size(const tadj_adjustment* adj);
TADJ_API tadj_status tadj_adjustment_realized(const tadj_adjustment* adj, tadj_matrix** out);
TADJ_API tadj_status tadj_adjustment_composed(const tadj_adjustment* adj, tadj_matrix** out);
TADJ_API tadj_status tadj_adjustment_weighted_error(const tadj_adjustment* adj, double* out);
TADJ_API void tadj_adjustment_free(tadj_adjustment* adj);

/* Transform pipelines on length-N vectors. */
TADJ_API tadj_status tadj_pipeline_from_adjustment(const tadj_adjustment* adj,
                                                   tadj_pipeline** out);
TADJ_API tadj_status tadj_pipeline_from_kind(tadj_kind kind, int size, tadj_pipeline** out);
TADJ_API int tadj_pipeline_size(const tadj_pipeline* p);
TADJ_API tadj_status tadj_pipeline_forward(const tadj_pipeline* p, const double* in,
                                           double* out);
TADJ_API tadj_status tadj_pipeline_inverse(const tadj_pipeline* p, const double* in,
                                           double* out);
TADJ_API tadj_status tadj_pipeline_op_count(const tadj_pipeline* p, tadj_op_count* out);
TADJ_API void tadj_pipeline_free(tadj_pipeline* p);

/* Verification. *passed is 1 when every check holds. */
TADJ_API tadj_status tadj_verify_identities(const int* sizes, size_t count, uint64_t seed,
                                            tadj_text** report, int* passed);
TADJ_API tadj_status tadj_verify_matrix(const tadj_matrix* m, tadj_kind kind,
                                        tadj_text** report, int* passed);
TADJ_API tadj_status tadj_verify_adjustment(const tadj_adjustment* adj, tadj_text** report,
                                            int* passed);

/* Evaluation. */
TADJ_API tadj_status tadj_coding_gain(const tadj_matrix* transform, tadj_model model,
                                      double rho, double* out);
TADJ_API tadj_status tadj_eval_report(int size, const tadj_design_config* config,
                                      tadj_text** report, tadj_text** gains_csv,
                                      tadj_text** basis_csv);
TADJ_API tadj_status tadj_opcount_report(const int* sizes, size_t count, tadj_text** out);

/* Benchmark over every pipeline at the given sizes. */
TADJ_API void tadj_bench_config_default(tadj_bench_config* config);
TADJ_API tadj_status tadj_bench_run(const int* sizes, size_t count,
                                    const tadj_bench_config* config, tadj_text** table,
                                    tadj_text** csv);

/* Figure data. */
TADJ_API tadj_status tadj_export_sparsity_grid(int size, const tadj_design_config* config,
                                               int scale, tadj_text** pgm, tadj_text** csv);
TADJ_API tadj_status tadj_export_pattern_mask(const char* pattern, int size, int scale,
                                              tadj_text** mask, tadj_text** pgm);
TADJ_API tadj_status tadj_export_basis_functions(int size, const tadj_design_config* config,
                                                 tadj_text** csv);

#ifdef __cplusplus
}
#endif

#endif /* TADJ_TADJ_H */
