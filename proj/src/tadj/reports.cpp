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

#include "tadj/reports.hpp"

#include "tadj/error.hpp"
#include "tadj/fast_transform.hpp"
#include "tadj/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace tadj {

bool SuiteReport::passed() const {
  for (const auto& l : lines) {
    if (!l.pass) return false;
  }
  return !lines.empty();
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  int failures = 0;
  for (const auto& l : lines) {
    char buf[256];
    if (l.limit > 0.0) {
      std::snprintf(buf, sizeof(buf), "%s %-40s %.3e < %.0e\n", l.pass ? "PASS" : "FAIL",
                    l.name.c_str(), l.value, l.limit);
    } else {
      std::snprintf(buf, sizeof(buf), "%s %-40s exact\n", l.pass ? "PASS" : "FAIL",
                    l.name.c_str());
    }
    os << buf;
    if (!l.pass) ++failures;
  }
  os << (failures == 0 ? "all " + std::to_string(lines.size()) + " checks passed\n"
                       : std::to_string(failures) + " of " + std::to_string(lines.size()) +
                             " checks failed\n");
  return os.str();
}

void SuiteReport::add(std::string name, double value, double limit) {
  lines.push_back({std::move(name), value, limit, value < limit});
}

void SuiteReport::add_exact(std::string name, bool ok) {
  lines.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok});
}

Matrix dct8_closed_form(int size) {
  Matrix t(size, size);
  const double denom = 4.0 * size + 2.0;
  const double scale = 2.0 / std::sqrt(2.0 * size + 1.0);
  for (int k = 0; k < size; ++k) {
    for (int n = 0; n < size; ++n) {
      t(k, n) = scale * std::cos(std::numbers::pi * (2.0 * k + 1.0) * (2.0 * n + 1.0) / denom);
    }
  }
  return t;
}

namespace {

std::string tag(const std::string& what, int n) { return what + "[" + std::to_string(n) + "]"; }

GivensSchedule random_angles(GivensSchedule s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
  for (auto& layer : s.layers) {
    for (auto& r : layer) r.theta = dist(rng);
  }
  return s;
}

}  // namespace

SuiteReport identity_suite(const std::vector<int>& sizes, std::uint64_t seed) {
  SuiteReport report;
  std::mt19937_64 rng(seed);
  for (int n : sizes) {
    const auto sf = sign_flip_matrices(n);
    const Matrix r = sf.reversal.cast<double>();
    const Matrix s = sf.signs.cast<double>();
    const IntMatrix id_int = IntMatrix::Identity(n, n);
    report.add_exact(tag("reversal-involution", n), sf.reversal * sf.reversal == id_int);
    report.add_exact(tag("sign-involution", n), sf.signs * sf.signs == id_int);

    for (auto kind : kAllTransformKinds) {
      const auto t = build_transform(kind, n);
      report.add(tag("orthonormal-" + std::string(to_string(kind)), n),
                 orthogonality_error(t.entries), 1e-12);
      report.add_exact(tag("positive-dc-" + std::string(to_string(kind)), n), t.entries(0, 0) > 0.0);
    }

    const Matrix c2 = build_transform(TransformKind::DCT2, n).entries;
    const Matrix s7 = build_transform(TransformKind::DST7, n).entries;
    report.add(tag("dct3 = dct2^T", n),
               max_abs_diff(build_transform(TransformKind::DCT3, n).entries, c2.transpose()), 1e-12);
    report.add(tag("dst2 = R dct2 S", n),
               max_abs_diff(build_transform(TransformKind::DST2, n).entries, r * c2 * s), 1e-12);
    report.add(tag("dst3 = S dct2^T R", n),
               max_abs_diff(build_transform(TransformKind::DST3, n).entries, s * c2.transpose() * r),
               1e-12);
    const Matrix c8 = build_transform(TransformKind::DCT8, n).entries;
    report.add(tag("dct8 = S dst7 R", n), max_abs_diff(c8, s * s7 * r), 1e-12);
    report.add(tag("dct8 cosine closed form", n), max_abs_diff(c8, dct8_closed_form(n)), 1e-12);
    report.add(tag("S dct2 = dct2 R", n), max_abs_diff(s * c2, c2 * r), 1e-12);

    // Chessboard relation between DST-7 and DCT-8 sub-block adjustments.
    const int b = std::min(8, n);
    AdjustmentMatrix c7;
    c7.pattern = SparsityPattern::subblock(b, n);
    c7.side = Side::Post;
    c7.base = TransformKind::DCT2;
    c7.target = TransformKind::DST7;
    c7.schedule = random_angles(pattern_schedule_template(c7.pattern), rng);
    c7.realized = givens_to_matrix(c7.schedule);
    const auto c8adj = dct8_adjustment_from_dst7(c7);
    report.add(tag("C8 = S C7 S", n), max_abs_diff(c8adj.realized, s * c7.realized * s), 1e-12);
    report.add_exact(tag("|C8| = |C7|", n),
                     c8adj.realized.cwiseAbs() == c7.realized.cwiseAbs());
    report.add(tag("C8 schedule realizes C8", n),
               max_abs_diff(givens_to_matrix(c8adj.schedule), c8adj.realized), 1e-12);
    const double alpha = default_alpha(n);
    report.add(tag("weighted error C8 dct2 ~ dct8 equals C7 dct2 ~ dst7", n),
               std::abs(weighted_error(c8adj.realized * c2, c8, alpha) -
                        weighted_error(c7.realized * c2, s7, alpha)),
               1e-12);
    const auto back = dct8_adjustment_from_dst7([&] {
      auto tmp = c8adj;
      tmp.target = TransformKind::DST7;
      return tmp;
    }());
    report.add_exact(tag("chessboard flip is an involution", n), back.realized == c7.realized);

    // Givens schedules: orthogonality, determinant, pattern conformance.
    for (const auto& pattern :
         {SparsityPattern::band(std::min(4, n), n), SparsityPattern::subblock(b, n),
          SparsityPattern::dense(n)}) {
      AdjustmentMatrix a;
      a.pattern = pattern;
      a.schedule = random_angles(pattern_schedule_template(pattern), rng);
      a.realized = givens_to_matrix(a.schedule);
      const auto check = check_adjustment(a);
      const std::string p = pattern.to_string();
      report.add(tag("givens orthogonal " + p, n), check.orthogonality, 1e-12);
      report.add(tag("givens conforms " + p, n), check.pattern_violation, 1e-12);
      report.add(tag("givens det = +1 " + p, n), std::abs(a.realized.determinant() - 1.0), 1e-10);
    }
  }
  return report;
}

SuiteReport verify_matrix(const Matrix& m, TransformKind kind) {
  SuiteReport report;
  const std::string k(to_string(kind));
  const bool square = m.rows() == m.cols() && m.rows() > 0;
  report.add_exact("square " + k, square);
  if (!square) return report;
  report.add("orthonormal " + k, orthogonality_error(m), 1e-10);
  report.add("matches exact " + k, max_abs_diff(m, build_transform(kind, static_cast<int>(m.rows())).entries),
             1e-12);
  return report;
}

SuiteReport verify_adjustment(const AdjustmentMatrix& adjustment) {
  SuiteReport report;
  const auto check = check_adjustment(adjustment);
  report.add("adjustment orthogonal", check.orthogonality, 1e-12);
  report.add("adjustment matches schedule", check.schedule_mismatch, 1e-12);
  report.add("adjustment conforms to " + adjustment.pattern.to_string(), check.pattern_violation,
             1e-12);
  return report;
}

Matrix target_matrix(const AdjustmentMatrix& adjustment) {
  return build_transform(adjustment.target, adjustment.size()).entries;
}

std::string adjustment_label(const AdjustmentMatrix& adjustment) {
  return std::string(to_string(adjustment.target)) + "~" + std::string(to_string(adjustment.base)) +
         "+" + adjustment.pattern.to_string() + "/" + std::string(to_string(adjustment.side));
}

std::string design_summary(const AdjustmentMatrix& adjustment, double alpha) {
  std::ostringstream os;
  const Matrix h = composed_matrix(adjustment);
  const Matrix d = target_matrix(adjustment);
  const double objective = weighted_error(h, d, alpha);
  const double baseline =
      weighted_error(build_transform(adjustment.base, adjustment.size()).entries, d, alpha);
  os << "adjustment = " << adjustment_label(adjustment) << '\n';
  os << "size = " << adjustment.size() << '\n';
  os << "objective = " << format_double(objective) << '\n';
  os << "identity_objective = " << format_double(baseline) << '\n';
  if (adjustment.report) {
    os << "converged = " << (adjustment.report->converged ? "true" : "false") << '\n';
    os << "sweeps = " << adjustment.report->sweeps << '\n';
    os << "best_restart = " << adjustment.report->best_restart << '\n';
    if (!adjustment.report->converged) os << "warning = optimizer did not converge\n";
  }
  os << "rotations = " << adjustment.schedule.rotation_count() << '\n';
  const auto cmp = basis_comparison(h, d, alpha);
  os << "row_l2_error =";
  for (double e : cmp.per_row_l2_error) os << ' ' << format_double(e);
  os << '\n';
  const auto support = structural_support(adjustment.schedule);
  os << "nonzeros_per_row =";
  for (Eigen::Index i = 0; i < support.rows(); ++i) os << ' ' << support.row(i).count();
  os << '\n';
  return os.str();
}

std::vector<AdjustmentMatrix> standard_configurations(int size, const DesignConfig& config) {
  const auto dst7 = build_transform(TransformKind::DST7, size);
  const auto dst3 = build_transform(TransformKind::DST3, size);
  const auto dct2 = build_transform(TransformKind::DCT2, size);
  std::vector<AdjustmentMatrix> out;
  out.push_back(optimize_adjustment(dst3, dst7, SparsityPattern::band(std::min(4, size), size),
                                    Side::Pre, config));
  out.push_back(optimize_adjustment(dst3, dst7, SparsityPattern::band(std::min(6, size), size),
                                    Side::Pre, config));
  out.push_back(optimize_adjustment(dct2, dst7, SparsityPattern::subblock(std::min(8, size), size),
                                    Side::Post, config));
  return out;
}

EvalReport evaluation_report(int size, const std::vector<AdjustmentMatrix>& adjustments) {
  for (const auto& a : adjustments) {
    if (a.size() != size) {
      throw Error(ErrorCode::Shape, "adjustment size " + std::to_string(a.size()) +
                                        " differs from evaluation size " + std::to_string(size));
    }
  }
  const std::vector<CovarianceModel> models = {
      residual_covariance_model(CovarianceVariant::OneSidedResidual, size),
      residual_covariance_model(CovarianceVariant::AR1, size, 0.95)};

  std::vector<std::pair<std::string, Matrix>> transforms;
  for (auto kind : {TransformKind::DCT2, TransformKind::DST7, TransformKind::DCT8}) {
    transforms.emplace_back(std::string(to_string(kind)), build_transform(kind, size).entries);
  }
  for (const auto& a : adjustments) transforms.emplace_back(adjustment_label(a), composed_matrix(a));

  EvalReport out;
  std::ostringstream text;
  std::ostringstream gains;
  gains << "transform,model,N,dB\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "coding gain (dB), N = %d\n%-36s", size, "transform");
  text << buf;
  for (const auto& m : models) {
    std::snprintf(buf, sizeof(buf), " %14s", m.name().c_str());
    text << buf;
  }
  text << '\n';
  auto row = [&](const std::string& name, const Matrix& t) {
    std::snprintf(buf, sizeof(buf), "%-36s", name.c_str());
    text << buf;
    for (const auto& m : models) {
      const double g = coding_gain(t, m);
      std::snprintf(buf, sizeof(buf), " %14.4f", g);
      text << buf;
      gains << name << ',' << m.name() << ',' << size << ',' << format_double(g) << '\n';
    }
    text << '\n';
  };
  for (const auto& [name, t] : transforms) row(name, t);
  for (const auto& m : models) {
    const double g = coding_gain(karhunen_loeve_transform(m), m);
    std::snprintf(buf, sizeof(buf), "klt(%s) = %.4f dB\n", m.name().c_str(), g);
    text << buf;
    gains << "klt," << m.name() << ',' << size << ',' << format_double(g) << '\n';
  }

  std::ostringstream basis;
  basis << "adjustment,row,l2_error\n";
  for (const auto& a : adjustments) {
    const auto cmp = basis_comparison(composed_matrix(a), target_matrix(a));
    const auto label = adjustment_label(a);
    text << "basis error " << label << " (row 0.." << size - 1 << "):";
    for (int i = 0; i < size; ++i) {
      std::snprintf(buf, sizeof(buf), " %.3f", cmp.per_row_l2_error[i]);
      text << buf;
      basis << label << ',' << i << ',' << format_double(cmp.per_row_l2_error[i]) << '\n';
    }
    text << "\nweighted error " << label << " = " << format_double(cmp.weighted_total) << '\n';
  }
  out.text = text.str();
  out.gains_csv = gains.str();
  out.basis_csv = basis.str();
  return out;
}

namespace {

AdjustedTransform skeleton_pipeline(const SparsityPattern& pattern, Side side, TransformKind base) {
  AdjustmentMatrix a;
  a.pattern = pattern;
  a.side = side;
  a.base = base;
  a.target = TransformKind::DST7;
  a.schedule = pattern_schedule_template(pattern);
  a.realized = givens_to_matrix(a.schedule);
  return AdjustedTransform(std::move(a));
}

void count_line(std::ostringstream& os, const std::string& key, const OperationCount& c,
                const char* extra = nullptr) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.4g", c.per_coefficient_mults());
  os << key << " = mults " << c.multiplications << ", adds " << c.additions
     << ", coefficients " << c.coefficients << ", mults_per_coefficient " << buf;
  if (extra) os << ", " << extra;
  os << '\n';
}

}  // namespace

std::string op_count_report(const std::vector<int>& sizes) {
  std::ostringstream os;
  os << "# multiplications by 0 or +-1, permutations and sign changes are free\n";
  for (int n : sizes) {
    const std::string ns = std::to_string(n);
    const std::string sq = ns + "x" + ns;
    count_line(os, "dense-1d/" + ns, dense_count_1d(n));
    count_line(os, "dense-2d/" + sq, dense_count_2d(n, n));
    count_line(os, "fast-dct2-1d/" + ns, fast_dct2_count(n));
    for (int k : {4, 6}) {
      if (k > n) continue;
      const auto t = skeleton_pipeline(SparsityPattern::band(k, n), Side::Pre, TransformKind::DST3);
      count_line(os, "band-" + std::to_string(k) + "+fast-dst3-1d/" + ns, op_count(t));
      count_line(os, "band-" + std::to_string(k) + "+fast-dst3-2d/" + sq, op_count_2d(t, t));
    }
    const int b = std::min(8, n);
    const auto t = skeleton_pipeline(SparsityPattern::subblock(b, n), Side::Post, TransformKind::DCT2);
    count_line(os, "subblock-" + std::to_string(b) + "+fast-dct2-1d/" + ns, op_count(t));
    count_line(os, "subblock-" + std::to_string(b) + "+fast-dct2-2d/" + sq, op_count_2d(t, t),
               "reference_mults_per_coefficient 36");
    auto c7 = t.adjustment();
    const SimultaneousEncoder enc(EncoderContext{c7, c7});
    count_line(os, "multiple-subblock-" + std::to_string(b) + "-2d/" + sq, enc.cost(),
               "produces dct2 and four dst7/dct8 blocks");
  }
  return os.str();
}

}  // namespace tadj
