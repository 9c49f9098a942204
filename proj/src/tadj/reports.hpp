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

#pragma once

// Text reports shared by the C API and the command-line tool.

#include "tadj/adjustment_design.hpp"
#include "tadj/evaluation.hpp"

#include <string>
#include <vector>

namespace tadj {

struct CheckLine {
  std::string name;
  double value = 0.0;
  double limit = 0.0;  // pass iff value < limit (value == 0 for exact checks)
  bool pass = false;
};

struct SuiteReport {
  std::vector<CheckLine> lines;

  bool passed() const;
  std::string text() const;
  void add(std::string name, double value, double limit);
  void add_exact(std::string name, bool ok);
};

/// Orthonormality, sign convention, every DCT-2 family identity, the DCT-8
/// flip, reversal/sign involutions, the sub-block chessboard relation and
/// Givens schedule invariants, for each size.
SuiteReport identity_suite(const std::vector<int>& sizes, std::uint64_t seed = 7);

/// Checks a matrix against the exact transform of `kind`.
SuiteReport verify_matrix(const Matrix& m, TransformKind kind);

/// Orthogonality, schedule agreement and pattern conformance.
SuiteReport verify_adjustment(const AdjustmentMatrix& adjustment);

/// DCT-8 via its cosine closed form, independent of the DST-7 flip.
Matrix dct8_closed_form(int size);

/// Objective, identity baseline, per-row errors and non-zeros per row.
std::string design_summary(const AdjustmentMatrix& adjustment, double alpha);

/// The three adjustment configurations evaluated throughout: band 4-tap and
/// 6-tap before DST-3, and an 8x8 sub-block after DCT-2, all targeting DST-7.
std::vector<AdjustmentMatrix> standard_configurations(int size, const DesignConfig& config);

/// Desired transform an adjustment approximates.
Matrix target_matrix(const AdjustmentMatrix& adjustment);
std::string adjustment_label(const AdjustmentMatrix& adjustment);

struct EvalReport {
  std::string text;
  std::string gains_csv;   // transform,model,N,dB
  std::string basis_csv;   // adjustment,row,l2_error
};

EvalReport evaluation_report(int size, const std::vector<AdjustmentMatrix>& adjustments);

/// "key = value" lines with dense, fast and adjusted operation counts.
std::string op_count_report(const std::vector<int>& sizes);

}  // namespace tadj
