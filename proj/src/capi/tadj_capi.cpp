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

#include "tadj/tadj.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "tadj/adjustment_design.hpp"
#include "tadj/bench.hpp"
#include "tadj/error.hpp"
#include "tadj/evaluation.hpp"
#include "tadj/fast_transform.hpp"
#include "tadj/figures.hpp"
#include "tadj/matrix_io.hpp"
#include "tadj/reports.hpp"
#include "tadj/transform_matrices.hpp"

struct tadj_text {
  std::string data;
};

struct tadj_matrix {
  tadj::Matrix m;
};

struct tadj_adjustment {
  tadj::AdjustmentMatrix adj;
};

struct tadj_pipeline {
  std::variant<tadj::AdjustedTransform, tadj::FastDct2Transform, tadj::DenseTransform> impl;
  tadj::OperationCount ops;
  int size = 0;
};

namespace {

thread_local std::string last_error;

tadj_status status_for(tadj::ErrorCode code) {
  using tadj::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidDimension: return TADJ_ERR_INVALID_DIMENSION;
    case ErrorCode::KindMismatch: return TADJ_ERR_KIND_MISMATCH;
    case ErrorCode::Shape: return TADJ_ERR_SHAPE;
    case ErrorCode::InvalidSchedule: return TADJ_ERR_SCHEDULE;
    case ErrorCode::Pattern: return TADJ_ERR_PATTERN;
    case ErrorCode::Configuration: return TADJ_ERR_CONFIGURATION;
    case ErrorCode::Model: return TADJ_ERR_MODEL;
    case ErrorCode::Parse: return TADJ_ERR_PARSE;
    case ErrorCode::Io: return TADJ_ERR_IO;
  }
  return TADJ_ERR_INTERNAL;
}

tadj_status fail(tadj_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
tadj_status guard(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const tadj::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TADJ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TADJ_ERR_INTERNAL, e.what());
  }
}

#define TADJ_REQUIRE(cond, what)                                    \
  do {                                                              \
    if (!(cond)) return fail(TADJ_ERR_INVALID_ARGUMENT, what);      \
  } while (0)

bool valid_kind(tadj_kind kind) { return kind >= TADJ_DCT2 && kind <= TADJ_DCT8; }

tadj::TransformKind to_kind(tadj_kind kind) { return tadj::kAllTransformKinds[kind]; }

tadj_kind from_kind(tadj::TransformKind kind) {
  for (int k = 0; k < 6; ++k) {
    if (tadj::kAllTransformKinds[k] == kind) return static_cast<tadj_kind>(k);
  }
  return TADJ_DCT2;
}

tadj::Side to_side(tadj_side side) { return side == TADJ_POST ? tadj::Side::Post : tadj::Side::Pre; }

tadj::DesignConfig to_config(const tadj_design_config* c) {
  tadj::DesignConfig out;
  if (c == nullptr) return out;
  if (c->alpha > 0.0) out.alpha = c->alpha;
  out.max_iterations = c->max_iterations;
  out.tolerance = c->tolerance;
  out.restarts = c->restarts;
  out.rng_seed = c->seed;
  out.sparsity_epsilon = c->sparsity_epsilon;
  return out;
}

tadj_text* make_text(std::string s) { return new tadj_text{std::move(s)}; }

std::vector<int> to_sizes(const int* sizes, size_t count) {
  if (sizes == nullptr || count == 0) return {4, 8, 16, 32, 64};
  return std::vector<int>(sizes, sizes + count);
}

tadj_status finish_suite(const tadj::SuiteReport& suite, tadj_text** report, int* passed) {
  if (report != nullptr) *report = make_text(suite.text());
  if (passed != nullptr) *passed = suite.passed() ? 1 : 0;
  return TADJ_OK;
}

}  // namespace

extern "C" {

const char* tadj_version(void) { return "0.1.0"; }

const char* tadj_status_string(tadj_status status) {
  switch (status) {
    case TADJ_OK: return "ok";
    case TADJ_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case TADJ_ERR_INVALID_DIMENSION: return "invalid-dimension";
    case TADJ_ERR_KIND_MISMATCH: return "kind-mismatch";
    case TADJ_ERR_SHAPE: return "shape";
    case TADJ_ERR_SCHEDULE: return "invalid-schedule";
    case TADJ_ERR_PATTERN: return "pattern";
    case TADJ_ERR_CONFIGURATION: return "configuration";
    case TADJ_ERR_MODEL: return "model";
    case TADJ_ERR_PARSE: return "parse";
    case TADJ_ERR_IO: return "io";
    case TADJ_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* tadj_last_error(void) { return last_error.c_str(); }

const char* tadj_text_data(const tadj_text* text) { return text ? text->data.c_str() : ""; }

size_t tadj_text_size(const tadj_text* text) { return text ? text->data.size() : 0; }

void tadj_text_free(tadj_text* text) { delete text; }

tadj_status tadj_kind_parse(const char* name, tadj_kind* out) {
  TADJ_REQUIRE(name != nullptr && out != nullptr, "null argument");
  const auto kind = tadj::parse_transform_kind(name);
  if (!kind) return fail(TADJ_ERR_INVALID_ARGUMENT, std::string("unknown transform kind '") + name + "'");
  *out = from_kind(*kind);
  return TADJ_OK;
}

const char* tadj_kind_name(tadj_kind kind) {
  return valid_kind(kind) ? tadj::to_string(to_kind(kind)).data() : "unknown";
}

tadj_status tadj_side_parse(const char* name, tadj_side* out) {
  TADJ_REQUIRE(name != nullptr && out != nullptr, "null argument");
  const auto side = tadj::parse_side(name);
  if (!side) return fail(TADJ_ERR_INVALID_ARGUMENT, std::string("unknown side '") + name + "'");
  *out = *side == tadj::Side::Post ? TADJ_POST : TADJ_PRE;
  return TADJ_OK;
}

// ---------------------------------------------------------------------------
// Matrices

tadj_status tadj_matrix_build(tadj_kind kind, int size, tadj_matrix** out) {
  TADJ_REQUIRE(out != nullptr && valid_kind(kind), "invalid argument");
  return guard([&] {
    *out = new tadj_matrix{tadj::build_transform(to_kind(kind), size).entries};
    return TADJ_OK;
  });
}

tadj_status tadj_matrix_create(int rows, int cols, const double* data, tadj_matrix** out) {
  TADJ_REQUIRE(out != nullptr && data != nullptr, "null argument");
  TADJ_REQUIRE(rows > 0 && cols > 0, "matrix dimensions must be positive");
  return guard([&] {
    tadj::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m(i, j) = data[static_cast<size_t>(i) * cols + j];
    }
    *out = new tadj_matrix{std::move(m)};
    return TADJ_OK;
  });
}

tadj_status tadj_matrix_parse(const char* text, tadj_matrix** out) {
  TADJ_REQUIRE(text != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_matrix{tadj::parse_matrix(text)};
    return TADJ_OK;
  });
}

tadj_status tadj_matrix_read(const char* path, tadj_matrix** out) {
  TADJ_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_matrix{tadj::read_matrix_file(path)};
    return TADJ_OK;
  });
}

tadj_status tadj_matrix_write(const tadj_matrix* m, const char* path) {
  TADJ_REQUIRE(m != nullptr && path != nullptr, "null argument");
  return guard([&] {
    tadj::write_matrix_file(path, m->m);
    return TADJ_OK;
  });
}

tadj_status tadj_matrix_format(const tadj_matrix* m, tadj_text** out) {
  TADJ_REQUIRE(m != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = make_text(tadj::format_matrix(m->m));
    return TADJ_OK;
  });
}

int tadj_matrix_rows(const tadj_matrix* m) { return m ? static_cast<int>(m->m.rows()) : 0; }

int tadj_matrix_cols(const tadj_matrix* m) { return m ? static_cast<int>(m->m.cols()) : 0; }

tadj_status tadj_matrix_get(const tadj_matrix* m, double* data) {
  TADJ_REQUIRE(m != nullptr && data != nullptr, "null argument");
  const auto cols = m->m.cols();
  for (Eigen::Index i = 0; i < m->m.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) data[i * cols + j] = m->m(i, j);
  }
  return TADJ_OK;
}

void tadj_matrix_free(tadj_matrix* m) { delete m; }

// ---------------------------------------------------------------------------
// Adjustments

void tadj_design_config_default(tadj_design_config* config) {
  if (config == nullptr) return;
  const tadj::DesignConfig d;
  config->alpha = 0.0;
  config->max_iterations = d.max_iterations;
  config->tolerance = d.tolerance;
  config->restarts = d.restarts;
  config->seed = d.rng_seed;
  config->sparsity_epsilon = d.sparsity_epsilon;
}

tadj_status tadj_adjustment_design(tadj_kind base, tadj_kind target, int size,
                                   const char* pattern, tadj_side side,
                                   const tadj_design_config* config, tadj_adjustment** out) {
  TADJ_REQUIRE(out != nullptr && pattern != nullptr, "null argument");
  TADJ_REQUIRE(valid_kind(base) && valid_kind(target), "invalid transform kind");
  return guard([&] {
    const auto b = tadj::build_transform(to_kind(base), size);
    const auto d = tadj::build_transform(to_kind(target), size);
    const auto p = tadj::parse_pattern(pattern, size);
    *out = new tadj_adjustment{
        tadj::optimize_adjustment(b, d, p, to_side(side), to_config(config))};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_from_dst7(const tadj_adjustment* dst7, tadj_adjustment** out) {
  TADJ_REQUIRE(dst7 != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_adjustment{tadj::dct8_adjustment_from_dst7(dst7->adj)};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_parse(const char* text, tadj_adjustment** out) {
  TADJ_REQUIRE(text != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_adjustment{tadj::parse_adjustment(text)};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_read(const char* path, tadj_adjustment** out) {
  TADJ_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_adjustment{tadj::parse_adjustment(tadj::read_text_file(path))};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_write(const tadj_adjustment* adj, const char* path) {
  TADJ_REQUIRE(adj != nullptr && path != nullptr, "null argument");
  return guard([&] {
    tadj::write_text_file(path, tadj::format_adjustment(adj->adj));
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_format(const tadj_adjustment* adj, tadj_text** out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = make_text(tadj::format_adjustment(adj->adj));
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_summary(const tadj_adjustment* adj, tadj_text** out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = make_text(tadj::design_summary(adj->adj, tadj::default_alpha(adj->adj.size())));
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_stats(const tadj_adjustment* adj, tadj_design_stats* out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  if (!adj->adj.report) return fail(TADJ_ERR_INVALID_ARGUMENT, "adjustment carries no design report");
  const auto& r = *adj->adj.report;
  out->objective = r.objective;
  out->identity_objective = r.identity_objective;
  out->converged = r.converged ? 1 : 0;
  out->sweeps = r.sweeps;
  return TADJ_OK;
}

int tadj_adjustment_size(const tadj_adjustment* adj) { return adj ? adj->adj.size() : 0; }

tadj_status tadj_adjustment_realized(const tadj_adjustment* adj, tadj_matrix** out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_matrix{adj->adj.realized};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_composed(const tadj_adjustment* adj, tadj_matrix** out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    *out = new tadj_matrix{tadj::composed_matrix(adj->adj)};
    return TADJ_OK;
  });
}

tadj_status tadj_adjustment_weighted_error(const tadj_adjustment* adj, double* out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    const int n = adj->adj.size();
    *out = tadj::weighted_error(tadj::composed_matrix(adj->adj), tadj::target_matrix(adj->adj),
                                tadj::default_alpha(n));
    return TADJ_OK;
  });
}

void tadj_adjustment_free(tadj_adjustment* adj) { delete adj; }

// ---------------------------------------------------------------------------
// Pipelines

tadj_status tadj_pipeline_from_adjustment(const tadj_adjustment* adj, tadj_pipeline** out) {
  TADJ_REQUIRE(adj != nullptr && out != nullptr, "null argument");
  return guard([&] {
    tadj::AdjustedTransform t(adj->adj);
    const auto ops = tadj::op_count(t);
    const int n = t.size();
    *out = new tadj_pipeline{std::move(t), ops, n};
    return TADJ_OK;
  });
}

tadj_status tadj_pipeline_from_kind(tadj_kind kind, int size, tadj_pipeline** out) {
  TADJ_REQUIRE(out != nullptr && valid_kind(kind), "invalid argument");
  return guard([&] {
    if (kind == TADJ_DCT2 && tadj::fast_size_supported(size)) {
      *out = new tadj_pipeline{tadj::FastDct2Transform(size), tadj::fast_dct2_count(size), size};
    } else {
      const auto m = tadj::build_transform(to_kind(kind), size);
      *out = new tadj_pipeline{tadj::DenseTransform(m.entries), tadj::dense_count_1d(size), size};
    }
    return TADJ_OK;
  });
}

int tadj_pipeline_size(const tadj_pipeline* p) { return p ? p->size : 0; }

tadj_status tadj_pipeline_forward(const tadj_pipeline* p, const double* in, double* out) {
  TADJ_REQUIRE(p != nullptr && in != nullptr && out != nullptr, "null argument");
  TADJ_REQUIRE(in != out, "input and output must not alias");
  return guard([&] {
    std::visit([&](const auto& t) { t.forward(in, out); }, p->impl);
    return TADJ_OK;
  });
}

tadj_status tadj_pipeline_inverse(const tadj_pipeline* p, const double* in, double* out) {
  TADJ_REQUIRE(p != nullptr && in != nullptr && out != nullptr, "null argument");
  TADJ_REQUIRE(in != out, "input and output must not alias");
  return guard([&] {
    std::visit([&](const auto& t) { t.inverse(in, out); }, p->impl);
    return TADJ_OK;
  });
}

tadj_status tadj_pipeline_op_count(const tadj_pipeline* p, tadj_op_count* out) {
  TADJ_REQUIRE(p != nullptr && out != nullptr, "null argument");
  out->multiplications = p->ops.multiplications;
  out->additions = p->ops.additions;
  out->coefficients = p->ops.coefficients;
  return TADJ_OK;
}

void tadj_pipeline_free(tadj_pipeline* p) { delete p; }

// ---------------------------------------------------------------------------
// Verification, evaluation, reports

tadj_status tadj_verify_identities(const int* sizes, size_t count, uint64_t seed,
                                   tadj_text** report, int* passed) {
  return guard([&] { return finish_suite(tadj::identity_suite(to_sizes(sizes, count), seed), report, passed); });
}

tadj_status tadj_verify_matrix(const tadj_matrix* m, tadj_kind kind, tadj_text** report,
                               int* passed) {
  TADJ_REQUIRE(m != nullptr && valid_kind(kind), "invalid argument");
  return guard([&] { return finish_suite(tadj::verify_matrix(m->m, to_kind(kind)), report, passed); });
}

tadj_status tadj_verify_adjustment(const tadj_adjustment* adj, tadj_text** report, int* passed) {
  TADJ_REQUIRE(adj != nullptr, "null argument");
  return guard([&] { return finish_suite(tadj::verify_adjustment(adj->adj), report, passed); });
}

tadj_status tadj_coding_gain(const tadj_matrix* transform, tadj_model model, double rho,
                             double* out) {
  TADJ_REQUIRE(transform != nullptr && out != nullptr, "null argument");
  return guard([&] {
    const auto variant = model == TADJ_MODEL_AR1 ? tadj::CovarianceVariant::AR1
                                                 : tadj::CovarianceVariant::OneSidedResidual;
    const auto cov =
        tadj::residual_covariance_model(variant, static_cast<int>(transform->m.rows()), rho);
    *out = tadj::coding_gain(transform->m, cov);
    return TADJ_OK;
  });
}

tadj_status tadj_eval_report(int size, const tadj_design_config* config, tadj_text** report,
                             tadj_text** gains_csv, tadj_text** basis_csv) {
  return guard([&] {
    const auto adjustments = tadj::standard_configurations(size, to_config(config));
    auto r = tadj::evaluation_report(size, adjustments);
    if (report) *report = make_text(std::move(r.text));
    if (gains_csv) *gains_csv = make_text(std::move(r.gains_csv));
    if (basis_csv) *basis_csv = make_text(std::move(r.basis_csv));
    return TADJ_OK;
  });
}

tadj_status tadj_opcount_report(const int* sizes, size_t count, tadj_text** out) {
  TADJ_REQUIRE(out != nullptr, "null argument");
  return guard([&] {
    const std::vector<int> chosen =
        (sizes == nullptr || count == 0) ? std::vector<int>{32, 64} : to_sizes(sizes, count);
    *out = make_text(tadj::op_count_report(chosen));
    return TADJ_OK;
  });
}

// ---------------------------------------------------------------------------
// Benchmark

void tadj_bench_config_default(tadj_bench_config* config) {
  if (config == nullptr) return;
  const tadj::BenchConfig d;
  config->samples = d.samples;
  config->warmup = d.warmup;
  config->min_sample_seconds = d.min_sample_seconds;
  config->blocks = d.blocks;
  config->seed = d.seed;
}

tadj_status tadj_bench_run(const int* sizes, size_t count, const tadj_bench_config* config,
                           tadj_text** table, tadj_text** csv) {
  return guard([&] {
    tadj::BenchConfig c;
    if (config != nullptr) {
      c.samples = config->samples;
      c.warmup = config->warmup;
      c.min_sample_seconds = config->min_sample_seconds;
      c.blocks = config->blocks;
      c.seed = config->seed;
    }
    const std::vector<int> chosen =
        (sizes == nullptr || count == 0) ? std::vector<int>{32, 64} : to_sizes(sizes, count);
    using tadj::BenchPipeline;
    const auto reports = tadj::run_benchmark({BenchPipeline::Dense, BenchPipeline::Band4,
                                              BenchPipeline::Band6, BenchPipeline::SubBlock8,
                                              BenchPipeline::Multiple},
                                             chosen, c);
    if (table) *table = make_text(tadj::bench_table(reports));
    if (csv) *csv = make_text(tadj::bench_csv(reports));
    return TADJ_OK;
  });
}

// ---------------------------------------------------------------------------
// Figures

tadj_status tadj_export_sparsity_grid(int size, const tadj_design_config* config, int scale,
                                      tadj_text** pgm, tadj_text** csv) {
  return guard([&] {
    const auto cells = tadj::sparsity_grid(size, to_config(config));
    if (pgm) *pgm = make_text(tadj::grid_pgm(cells, 4, scale));
    if (csv) *csv = make_text(tadj::grid_csv(cells));
    return TADJ_OK;
  });
}

tadj_status tadj_export_pattern_mask(const char* pattern, int size, int scale, tadj_text** mask,
                                     tadj_text** pgm) {
  TADJ_REQUIRE(pattern != nullptr, "null argument");
  return guard([&] {
    const auto m = tadj::pattern_mask(tadj::parse_pattern(pattern, size));
    if (mask) *mask = make_text(tadj::format_matrix(m));
    if (pgm) *pgm = make_text(tadj::magnitude_pgm(m, scale));
    return TADJ_OK;
  });
}

tadj_status tadj_export_basis_functions(int size, const tadj_design_config* config,
                                        tadj_text** csv) {
  TADJ_REQUIRE(csv != nullptr, "null argument");
  return guard([&] {
    const auto b = tadj::build_transform(tadj::TransformKind::DST3, size);
    const auto d = tadj::build_transform(tadj::TransformKind::DST7, size);
    const auto adj = tadj::optimize_adjustment(
        b, d, tadj::SparsityPattern::band(std::min(6, size), size), tadj::Side::Pre,
        to_config(config));
    *csv = make_text(tadj::basis_functions_csv(tadj::composed_matrix(adj), d.entries));
    return TADJ_OK;
  });
}

}  // extern "C"
