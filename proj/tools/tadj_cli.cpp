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

// tadj command-line tool. Links only the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tadj/tadj.h"

namespace {

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kCompute = 5,
};

struct Failure {
  int code;
  std::string message;
};

int exit_for(tadj_status s) {
  switch (s) {
    case TADJ_OK: return kOk;
    case TADJ_ERR_INVALID_ARGUMENT:
    case TADJ_ERR_INVALID_DIMENSION:
    case TADJ_ERR_PATTERN: return kUsage;
    case TADJ_ERR_IO: return kIo;
    case TADJ_ERR_PARSE: return kParse;
    default: return kCompute;
  }
}

void check(tadj_status s, const std::string& context) {
  if (s != TADJ_OK) {
    throw Failure{exit_for(s), context + ": " + tadj_status_string(s) + ": " + tadj_last_error()};
  }
}

struct TextDeleter {
  void operator()(tadj_text* t) const { tadj_text_free(t); }
};
struct MatrixDeleter {
  void operator()(tadj_matrix* m) const { tadj_matrix_free(m); }
};
struct AdjustmentDeleter {
  void operator()(tadj_adjustment* a) const { tadj_adjustment_free(a); }
};
struct PipelineDeleter {
  void operator()(tadj_pipeline* p) const { tadj_pipeline_free(p); }
};
using Text = std::unique_ptr<tadj_text, TextDeleter>;
using MatrixPtr = std::unique_ptr<tadj_matrix, MatrixDeleter>;
using AdjustmentPtr = std::unique_ptr<tadj_adjustment, AdjustmentDeleter>;
using PipelinePtr = std::unique_ptr<tadj_pipeline, PipelineDeleter>;

std::string str(const Text& t) { return std::string(tadj_text_data(t.get()), tadj_text_size(t.get())); }

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size()))) {
    throw Failure{kIo, "cannot write " + path};
  }
}

tadj_kind kind_arg(const std::string& name, const std::string& flag) {
  tadj_kind k;
  if (tadj_kind_parse(name.c_str(), &k) != TADJ_OK) {
    throw Failure{kUsage, flag + ": unknown transform kind '" + name + "'"};
  }
  return k;
}

tadj_side side_arg(const std::string& name) {
  tadj_side s;
  if (tadj_side_parse(name.c_str(), &s) != TADJ_OK) {
    throw Failure{kUsage, "--side: expected pre or post, got '" + name + "'"};
  }
  return s;
}

struct DesignFlags {
  std::uint64_t seed = 0;
  int restarts = 0;
  int max_iterations = 0;
  double tolerance = 0.0;

  void attach(CLI::App* app) {
    tadj_design_config d;
    tadj_design_config_default(&d);
    seed = d.seed;
    restarts = d.restarts;
    max_iterations = d.max_iterations;
    tolerance = d.tolerance;
    app->add_option("--seed", seed, "Restart seed")->capture_default_str();
    app->add_option("--restarts", restarts, "Optimizer starts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "Sweeps per start")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--tolerance", tolerance, "Relative sweep improvement to stop at")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  tadj_design_config config() const {
    tadj_design_config c;
    tadj_design_config_default(&c);
    c.seed = seed;
    c.restarts = restarts;
    c.max_iterations = max_iterations;
    c.tolerance = tolerance;
    return c;
  }
};

// ---------------------------------------------------------------------------

struct GenCmd {
  std::string kind;
  int size = 0;
  std::string out;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("gen", "Write an orthonormal transform matrix");
    c->add_option("--kind", kind, "dct2, dct3, dst2, dst3, dst7 or dct8")->required();
    c->add_option("--size", size, "Transform size N")->required()->check(CLI::PositiveNumber);
    c->add_option("-o,--out", out, "Output file (default stdout)");
    c->final_callback([this] { run(); });
  }

  void run() {
    tadj_matrix* raw = nullptr;
    check(tadj_matrix_build(kind_arg(kind, "--kind"), size, &raw), "gen");
    MatrixPtr m(raw);
    tadj_text* t = nullptr;
    check(tadj_matrix_format(m.get(), &t), "gen");
    emit(out, str(Text(t)));
  }
};

struct DesignCmd {
  std::string base = "dst3";
  std::string target = "dst7";
  std::string pattern = "band:6";
  std::string side = "pre";
  int size = 16;
  std::string from_dst7;
  std::string out;
  std::string summary;
  DesignFlags flags;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("design", "Optimize an adjustment matrix");
    c->add_option("--base", base, "Fast base transform")->capture_default_str();
    c->add_option("--target", target, "Desired transform")->capture_default_str();
    c->add_option("--pattern", pattern, "band:K, subblock:B or dense")->capture_default_str();
    c->add_option("--side", side, "pre or post")->capture_default_str();
    c->add_option("--size", size, "Transform size N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--from-dst7", from_dst7,
                  "Derive the DCT-8 adjustment from a post-side DCT-2 -> DST-7 file")
        ->check(CLI::ExistingFile);
    c->add_option("-o,--out", out, "Adjustment file (default stdout)");
    c->add_option("--summary", summary, "Summary file (default stderr)");
    flags.attach(c);
    c->final_callback([this] { run(); });
  }

  void run() {
    tadj_adjustment* raw = nullptr;
    if (!from_dst7.empty()) {
      tadj_adjustment* in = nullptr;
      check(tadj_adjustment_read(from_dst7.c_str(), &in), "design");
      AdjustmentPtr src(in);
      check(tadj_adjustment_from_dst7(src.get(), &raw), "design");
    } else {
      const auto cfg = flags.config();
      check(tadj_adjustment_design(kind_arg(base, "--base"), kind_arg(target, "--target"), size,
                                   pattern.c_str(), side_arg(side), &cfg, &raw),
            "design");
    }
    AdjustmentPtr adj(raw);
    tadj_text* t = nullptr;
    check(tadj_adjustment_format(adj.get(), &t), "design");
    emit(out, str(Text(t)));
    check(tadj_adjustment_summary(adj.get(), &t), "design");
    const std::string s = str(Text(t));
    if (summary.empty()) {
      std::cerr << s;
    } else {
      emit(summary, s);
    }
  }
};

struct VerifyCmd {
  std::vector<int> sizes;
  std::string matrix;
  std::string kind;
  std::string adjustment;
  std::uint64_t seed = 7;
  std::string out;
  int exit_code = kOk;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("verify", "Check identities, a matrix file or an adjustment file");
    c->add_option("--sizes", sizes, "Sizes for the identity suite (default 4 8 16 32 64)")
        ->check(CLI::PositiveNumber)
        ->delimiter(',');
    c->add_option("--matrix", matrix, "Matrix file to check against --kind");
    c->add_option("--kind", kind, "Expected kind of --matrix");
    c->add_option("--adjustment", adjustment, "Adjustment file to check");
    c->add_option("--seed", seed, "Seed for random schedules")->capture_default_str();
    c->add_option("-o,--out", out, "Report file (default stdout)");
    c->final_callback([this] { run(); });
  }

  void run() {
    if (!matrix.empty() && kind.empty()) throw Failure{kUsage, "--matrix requires --kind"};
    if (matrix.empty() && !kind.empty()) throw Failure{kUsage, "--kind requires --matrix"};
    std::string report;
    bool ok = true;
    auto take = [&](tadj_text* t, int passed) {
      report += str(Text(t));
      ok = ok && passed != 0;
    };
    int passed = 0;
    tadj_text* t = nullptr;
    if (!matrix.empty()) {
      tadj_matrix* raw = nullptr;
      check(tadj_matrix_read(matrix.c_str(), &raw), "verify");
      MatrixPtr m(raw);
      check(tadj_verify_matrix(m.get(), kind_arg(kind, "--kind"), &t, &passed), "verify");
      take(t, passed);
    }
    if (!adjustment.empty()) {
      tadj_adjustment* raw = nullptr;
      check(tadj_adjustment_read(adjustment.c_str(), &raw), "verify");
      AdjustmentPtr a(raw);
      check(tadj_verify_adjustment(a.get(), &t, &passed), "verify");
      take(t, passed);
    }
    if ((matrix.empty() && adjustment.empty()) || !sizes.empty()) {
      check(tadj_verify_identities(sizes.data(), sizes.size(), seed, &t, &passed), "verify");
      take(t, passed);
    }
    report += ok ? "result = PASS\n" : "result = FAIL\n";
    emit(out, report);
    exit_code = ok ? kOk : kVerifyFailed;
  }
};

struct ApplyCmd {
  std::string kind;
  std::string adjustment;
  std::string input;
  std::string out;
  bool inverse = false;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand(
        "apply", "Transform every row of a matrix file (each row is one length-N vector)");
    auto* k = c->add_option("--kind", kind, "Plain transform kind");
    auto* a = c->add_option("--adjustment", adjustment, "Adjustment file (adjusted pipeline)");
    k->excludes(a);
    c->add_option("-i,--input", input, "Input matrix file")->required();
    c->add_option("-o,--out", out, "Output file (default stdout)");
    c->add_flag("--inverse", inverse, "Apply the inverse transform");
    c->final_callback([this] { run(); });
  }

  void run() {
    if (kind.empty() && adjustment.empty()) {
      throw Failure{kUsage, "apply needs --kind or --adjustment"};
    }
    tadj_matrix* raw = nullptr;
    check(tadj_matrix_read(input.c_str(), &raw), "apply");
    MatrixPtr in(raw);
    const int rows = tadj_matrix_rows(in.get());
    const int n = tadj_matrix_cols(in.get());

    tadj_pipeline* p = nullptr;
    if (!adjustment.empty()) {
      tadj_adjustment* adj = nullptr;
      check(tadj_adjustment_read(adjustment.c_str(), &adj), "apply");
      AdjustmentPtr a(adj);
      check(tadj_pipeline_from_adjustment(a.get(), &p), "apply");
    } else {
      check(tadj_pipeline_from_kind(kind_arg(kind, "--kind"), n, &p), "apply");
    }
    PipelinePtr pipe(p);
    if (tadj_pipeline_size(pipe.get()) != n) {
      throw Failure{kUsage, "--input rows have length " + std::to_string(n) +
                                " but the transform size is " +
                                std::to_string(tadj_pipeline_size(pipe.get()))};
    }
    std::vector<double> x(static_cast<size_t>(rows) * n);
    std::vector<double> y(x.size());
    check(tadj_matrix_get(in.get(), x.data()), "apply");
    for (int r = 0; r < rows; ++r) {
      const double* src = x.data() + static_cast<size_t>(r) * n;
      double* dst = y.data() + static_cast<size_t>(r) * n;
      check(inverse ? tadj_pipeline_inverse(pipe.get(), src, dst)
                    : tadj_pipeline_forward(pipe.get(), src, dst),
            "apply");
    }
    tadj_matrix* result = nullptr;
    check(tadj_matrix_create(rows, n, y.data(), &result), "apply");
    MatrixPtr res(result);
    tadj_text* t = nullptr;
    check(tadj_matrix_format(res.get(), &t), "apply");
    emit(out, str(Text(t)));
  }
};

struct EvalCmd {
  int size = 32;
  std::string out;
  std::string gains_csv;
  std::string basis_csv;
  DesignFlags flags;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("eval", "Coding gains and basis comparisons");
    c->add_option("--size", size, "Transform size N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("-o,--out", out, "Report file (default stdout)");
    c->add_option("--gains-csv", gains_csv, "Coding-gain table as CSV");
    c->add_option("--basis-csv", basis_csv, "Per-row basis errors as CSV");
    flags.attach(c);
    c->final_callback([this] { run(); });
  }

  void run() {
    const auto cfg = flags.config();
    tadj_text *report = nullptr, *gains = nullptr, *basis = nullptr;
    check(tadj_eval_report(size, &cfg, &report, &gains, &basis), "eval");
    Text r(report), g(gains), b(basis);
    emit(out, str(r));
    if (!gains_csv.empty()) emit(gains_csv, str(g));
    if (!basis_csv.empty()) emit(basis_csv, str(b));
  }
};

struct BenchCmd {
  std::vector<int> sizes{32, 64};
  int samples = 0;
  int blocks = 0;
  double min_sample_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;

  void attach(CLI::App& root) {
    tadj_bench_config d;
    tadj_bench_config_default(&d);
    samples = d.samples;
    blocks = d.blocks;
    min_sample_seconds = d.min_sample_seconds;
    seed = d.seed;
    auto* c = root.add_subcommand("bench", "Throughput of adjusted pipelines against dense");
    c->add_option("--sizes", sizes, "Sizes, from 4 8 16 32 64")
        ->delimiter(',')
        ->check(CLI::IsMember({4, 8, 16, 32, 64}))
        ->capture_default_str();
    c->add_option("--samples", samples, "Timed samples (>= 30)")
        ->check(CLI::Range(30, 100000))
        ->capture_default_str();
    c->add_option("--blocks", blocks, "Blocks per pass")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--min-sample-seconds", min_sample_seconds, "Minimum time per sample")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--seed", seed, "Input seed")->capture_default_str();
    c->add_option("-o,--out", out, "Table file (default stdout)");
    c->add_option("--csv", csv, "CSV file");
    c->final_callback([this] { run(); });
  }

  void run() {
    tadj_bench_config cfg;
    tadj_bench_config_default(&cfg);
    cfg.samples = samples;
    cfg.blocks = blocks;
    cfg.min_sample_seconds = min_sample_seconds;
    cfg.seed = seed;
    tadj_text *table = nullptr, *rows = nullptr;
    check(tadj_bench_run(sizes.data(), sizes.size(), &cfg, &table, &rows), "bench");
    Text t(table), r(rows);
    emit(out, str(t));
    if (!csv.empty()) emit(csv, str(r));
  }
};

struct OpcountCmd {
  std::vector<int> sizes{32, 64};
  std::string out;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("opcount", "Analytic operation counts per coefficient");
    c->add_option("--sizes", sizes, "Sizes, from 8 16 32 64")
        ->delimiter(',')
        ->check(CLI::IsMember({8, 16, 32, 64}))
        ->capture_default_str();
    c->add_option("-o,--out", out, "Report file (default stdout)");
    c->final_callback([this] { run(); });
  }

  void run() {
    tadj_text* t = nullptr;
    check(tadj_opcount_report(sizes.data(), sizes.size(), &t), "opcount");
    emit(out, str(Text(t)));
  }
};

struct ExportCmd {
  std::string figure;
  int size = 0;
  std::string pattern = "subblock:8";
  int scale = 4;
  std::string out;
  DesignFlags flags;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("export", "Figure data as PGM and CSV");
    c->add_option("figure", figure, "fig1, fig2 or fig3")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    c->add_option("--size", size, "Transform size N (fig1 16, fig2 32, fig3 16)")
        ->check(CLI::PositiveNumber);
    c->add_option("--pattern", pattern, "fig2 pattern")->capture_default_str();
    c->add_option("--scale", scale, "Pixels per matrix entry")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    c->add_option("-o,--out", out, "Output prefix")->required();
    flags.attach(c);
    c->final_callback([this] { run(); });
  }

  void run() {
    const auto cfg = flags.config();
    if (figure == "fig1") {
      tadj_text *pgm = nullptr, *csv = nullptr;
      check(tadj_export_sparsity_grid(size ? size : 16, &cfg, scale, &pgm, &csv), "export");
      Text p(pgm), c(csv);
      emit(out + ".pgm", str(p));
      emit(out + ".csv", str(c));
    } else if (figure == "fig2") {
      tadj_text *mask = nullptr, *pgm = nullptr;
      check(tadj_export_pattern_mask(pattern.c_str(), size ? size : 32, scale, &mask, &pgm),
            "export");
      Text m(mask), p(pgm);
      emit(out + ".txt", str(m));
      emit(out + ".pgm", str(p));
    } else {
      tadj_text* csv = nullptr;
      check(tadj_export_basis_functions(size ? size : 16, &cfg, &csv), "export");
      emit(out + ".csv", str(Text(csv)));
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast adjusted trigonometric transforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tadj_version()));

  GenCmd gen;
  DesignCmd design;
  VerifyCmd verify;
  ApplyCmd apply;
  EvalCmd eval;
  BenchCmd bench;
  OpcountCmd opcount;
  ExportCmd export_cmd;
  gen.attach(app);
  design.attach(app);
  verify.attach(app);
  apply.attach(app);
  eval.attach(app);
  bench.attach(app);
  opcount.attach(app);
  export_cmd.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return verify.exit_code;
}
