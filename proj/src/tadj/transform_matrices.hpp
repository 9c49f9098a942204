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

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace tadj {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

enum class TransformKind { DCT2, DCT3, DST2, DST3, DST7, DCT8 };

inline constexpr std::array<TransformKind, 6> kAllTransformKinds = {
    TransformKind::DCT2, TransformKind::DCT3, TransformKind::DST2,
    TransformKind::DST3, TransformKind::DST7, TransformKind::DCT8};

/// Lower-case name ("dct2", "dst7", ...).
std::string_view to_string(TransformKind kind) noexcept;
std::optional<TransformKind> parse_transform_kind(std::string_view name);

/// Exact orthonormal transform. Row k is the k-th basis function (row 0 is the
/// lowest frequency), column n is the spatial sample index.
struct TransformMatrix {
  TransformKind kind;
  Matrix entries;

  int size() const noexcept { return static_cast<int>(entries.rows()); }
};

/// Reversal R (anti-identity) and alternating signs S = diag((-1)^m).
struct SignFlipMatrices {
  int size;
  IntMatrix reversal;
  IntMatrix signs;
};

/// Builds the orthonormal matrix of the requested kind.
///
/// DCT-2 and DST-7 come from their closed forms. The others are derived by
/// exact permutation and sign changes:
///   DCT-3 = DCT-2^T,  DST-2 = R DCT-2 S,  DST-3 = S DCT-2^T R,
///   DCT-8 = S DST-7 R.
/// Throws Error(InvalidDimension) when size < 1.
TransformMatrix build_transform(TransformKind kind, int size);

SignFlipMatrices sign_flip_matrices(int size);

/// DCT-8 from DST-7: out(m, n) = (-1)^m in(m, N-1-n).
TransformMatrix flip_to_dct8(const TransformMatrix& dst7);

/// Dense H = C B A, used for verification and metrics.
Matrix compose_pipeline(const Matrix& post, const TransformMatrix& base,
                        const Matrix& pre);
Matrix compose_pipeline(const Matrix& post, const Matrix& base,
                        const Matrix& pre);

// Exact helpers for R and S applied to a double matrix. They only permute and
// negate entries, so they introduce no rounding.
Matrix reverse_rows(const Matrix& m);
Matrix reverse_cols(const Matrix& m);
Matrix alternate_row_signs(const Matrix& m);
Matrix alternate_col_signs(const Matrix& m);

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Largest absolute entry of M M^T - I.
double orthogonality_error(const Matrix& m);

}  // namespace tadj
