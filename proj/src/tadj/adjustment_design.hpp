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

#include "tadj/transform_matrices.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tadj {

enum class PatternVariant { Band, SubBlock, Dense };

/// Which entries of an adjustment may depart from the identity.
///
/// Band(K):     entry (i, j) may be non-zero only if |i - j| < K.
/// SubBlock(B): only the top-left B x B block differs from the identity.
/// Dense:       no restriction.
struct SparsityPattern {
  PatternVariant variant = PatternVariant::Dense;
  int parameter = 0;  // taps for Band, order for SubBlock, unused for Dense
  int size = 0;

  static SparsityPattern band(int taps, int size);
  static SparsityPattern subblock(int order, int size);
  static SparsityPattern dense(int size);

  /// True if entry (i, j) is allowed to differ from the identity.
  bool allows(int i, int j) const noexcept;
  /// "band:K", "subblock:B" or "dense".
  std::string to_string() const;

  friend bool operator==(const SparsityPattern&,
                         const SparsityPattern&) = default;
};

/// Parses "band:K", "subblock:B" or "dense" for an N-point transform.
SparsityPattern parse_pattern(std::string_view text, int size);

/// Plane rotation acting on coordinates i < j. Its matrix is the identity
/// except G(i,i) = G(j,j) = cos(theta), G(i,j) = -sin(theta),
/// G(j,i) = sin(theta).
struct Rotation {
  int i = 0;
  int j = 1;
  double theta = 0.0;
};

/// Ordered layers of disjoint rotations. The realized matrix is
/// G_{L-1} ... G_1 G_0, i.e. layer 0 is applied to a vector first.
struct GivensSchedule {
  int size = 0;
  std::vector<std::vector<Rotation>> layers;

  int rotation_count() const noexcept;
};

/// Throws Error(InvalidSchedule) on out-of-range indices, i >= j, or an index
/// used twice within one layer.
void validate_schedule(const GivensSchedule& schedule);
Matrix givens_to_matrix(const GivensSchedule& schedule);

/// Rotation skeleton (all angles zero) whose realizations conform to the
/// pattern:
///   Band(K)     K-1 layers of nearest-neighbour rotations alternating between
///               pairs (0,1),(2,3),... and (1,2),(3,4),...; the product has
///               at most K consecutive non-zeros per row, all within |i-j| < K.
///   SubBlock(B) all B(B-1)/2 pairs on indices 0..B-1, round-robin layered.
///   Dense       all N(N-1)/2 pairs, round-robin layered.
GivensSchedule pattern_schedule_template(const SparsityPattern& pattern);

enum class Side { Pre, Post };

std::string_view to_string(Side side) noexcept;
std::optional<Side> parse_side(std::string_view text);

struct DesignConfig {
  std::optional<double> alpha;  // defaults to ln(100) / N
  int max_iterations = 2000;    // sweeps per restart
  double tolerance = 1e-10;
  int restarts = 4;             // restart 0 starts at the identity
  std::uint64_t rng_seed = 0x5eed;
  double sparsity_epsilon = 0.05;

  double alpha_for(int size) const;
  /// Throws Error(Configuration) on alpha <= 0, tolerance <= 0, etc.
  void validate(int size) const;
};

double default_alpha(int size);

/// Sum over (i, j) of exp(-alpha i) (H(i,j) - D(i,j))^2; i indexes rows
/// (frequency).
double weighted_error(const Matrix& h, const Matrix& d, double alpha);

struct DesignReport {
  double objective = 0.0;
  double identity_objective = 0.0;
  bool converged = false;
  int sweeps = 0;
  int best_restart = 0;
  std::vector<double> trace;  // per-sweep objective of the winning restart
};

struct AdjustmentMatrix {
  SparsityPattern pattern;
  Side side = Side::Pre;
  TransformKind base = TransformKind::DCT2;
  TransformKind target = TransformKind::DST7;
  GivensSchedule schedule;
  Matrix realized;
  std::optional<DesignReport> report;

  int size() const noexcept { return static_cast<int>(realized.rows()); }
};

/// Dense H = B A (Pre) or C B (Post).
Matrix composed_matrix(const AdjustmentMatrix& adjustment);

/// Minimizes weighted_error(H, D, alpha) over orthogonal adjustments
/// restricted to `pattern`, by cyclic coordinate descent on the Givens
/// angles with multi-start. Restart 0 starts at the identity, so the result
/// never scores worse than no adjustment.
AdjustmentMatrix optimize_adjustment(const TransformMatrix& base,
                                     const TransformMatrix& desired,
                                     const SparsityPattern& pattern, Side side,
                                     const DesignConfig& config);

struct SparsityMap {
  Matrix realized;
  Matrix magnitude;  // |realized| / max |realized|, in [0, 1]
  double objective = 0.0;
  bool converged = false;
};

/// Dense orthogonal X minimizing
///   sum X(i,j)^2 / (eps + |X(i,j)|) + exp(-alpha i) (H(i,j) - D(i,j))^2.
/// Descent by plane rotations, started from the unconstrained solution
/// (B^T D for Pre, D B^T for Post), from the identity, and from perturbed
/// copies of the unconstrained solution.
SparsityMap discover_sparsity(const TransformMatrix& base,
                              const TransformMatrix& desired, Side side,
                              const DesignConfig& config);

/// C8 = S C7 S for a post-side DCT-2 -> DST-7 adjustment: entries with i + j
/// odd change sign, and so do the matching rotation angles.
AdjustmentMatrix dct8_adjustment_from_dst7(const AdjustmentMatrix& dst7);

// Adjustment text format:
//   "<pattern> <side> <base> <target> <N>"
//   one "<layer> <i> <j> <theta>" line per rotation
//   the realized matrix in matrix text format
std::string format_adjustment(const AdjustmentMatrix& adjustment);
AdjustmentMatrix parse_adjustment(std::string_view text);

struct AdjustmentCheck {
  double orthogonality = 0.0;
  double schedule_mismatch = 0.0;  // max |realized - givens_to_matrix|
  double pattern_violation = 0.0;  // max deviation outside the pattern
};

AdjustmentCheck check_adjustment(const AdjustmentMatrix& adjustment);

}  // namespace tadj
