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

#include <doctest.h>

#include "support.hpp"
#include "tadj/reports.hpp"

using namespace tadj;

TEST_CASE("identity suite passes for every size") {
  const auto r = identity_suite({1, 2, 3, 4, 8, 16, 32, 64});
  CHECK(r.passed());
  CHECK(r.lines.size() > 100);
  CHECK(r.text().find("FAIL") == std::string::npos);
}

TEST_CASE("suite report bookkeeping") {
  SuiteReport r;
  r.add("small", 1e-14, 1e-12);
  r.add_exact("exact", true);
  CHECK(r.passed());
  r.add("large", 1.0, 1e-12);
  CHECK_FALSE(r.passed());
  CHECK(r.text().find("FAIL large") != std::string::npos);
}

TEST_CASE("verify_matrix flags a perturbed entry") {
  Matrix m = build_transform(TransformKind::DCT8, 16).entries;
  CHECK(verify_matrix(m, TransformKind::DCT8).passed());
  m(3, 5) += 1e-3;
  const auto r = verify_matrix(m, TransformKind::DCT8);
  CHECK_FALSE(r.passed());
  CHECK(r.text().find("FAIL matches exact dct8") != std::string::npos);
  CHECK_FALSE(verify_matrix(Matrix::Identity(3, 4), TransformKind::DCT2).passed());
}

TEST_CASE("verify_adjustment") {
  auto g = testing::rng(71);
  auto a = testing::random_adjustment(g, SparsityPattern::band(3, 8), Side::Pre,
                                      TransformKind::DST3, TransformKind::DST7);
  CHECK(verify_adjustment(a).passed());
  a.realized(0, 7) = 1e-6;
  CHECK_FALSE(verify_adjustment(a).passed());
}

TEST_CASE("design summary lists the required fields") {
  DesignConfig c;
  c.max_iterations = 30;
  c.restarts = 1;
  const auto a = optimize_adjustment(build_transform(TransformKind::DST3, 8),
                                     build_transform(TransformKind::DST7, 8),
                                     SparsityPattern::band(3, 8), Side::Pre, c);
  const auto s = design_summary(a, default_alpha(8));
  for (const char* key : {"objective = ", "identity_objective = ", "converged = ",
                          "row_l2_error = ", "nonzeros_per_row = "}) {
    CHECK(s.find(key) != std::string::npos);
  }
  CHECK(adjustment_label(a) == "dst7~dst3+band:3/pre");
}

TEST_CASE("op count report mentions the reference figure") {
  const auto r = op_count_report({32});
  CHECK(r.find("dense-2d/32x32 = mults 65536") != std::string::npos);
  CHECK(r.find("reference_mults_per_coefficient 36") != std::string::npos);
}

TEST_CASE("evaluation report") {
  DesignConfig c;
  c.max_iterations = 20;
  c.restarts = 1;
  const auto adj = standard_configurations(16, c);
  REQUIRE(adj.size() == 3);
  const auto r = evaluation_report(16, adj);
  CHECK(r.gains_csv.rfind("transform,model,N,dB\n", 0) == 0);
  CHECK(r.text.find("one-sided") != std::string::npos);
  CHECK(r.basis_csv.find("adjustment,row,l2_error") == 0);
  CHECK_THROWS(evaluation_report(8, adj));
}

TEST_CASE("dct8 closed form matches the built matrix") {
  for (int n : {3, 8, 32}) {
    CHECK(max_abs_diff(dct8_closed_form(n), build_transform(TransformKind::DCT8, n).entries) <
          1e-13);
  }
}
