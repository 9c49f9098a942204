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

#include "tadj/transform_matrices.hpp"

#include "tadj/error.hpp"

#include <cmath>
#include <numbers>

namespace tadj {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::KindMismatch: return "kind-mismatch";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InvalidSchedule: return "invalid-schedule";
    case ErrorCode::Pattern: return "pattern";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::Model: return "model";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::DCT2: return "dct2";
    case TransformKind::DCT3: return "dct3";
    case TransformKind::DST2: return "dst2";
    case TransformKind::DST3: return "dst3";
    case TransformKind::DST7: return "dst7";
    case TransformKind::DCT8: return "dct8";
  }
  return "?";
}

std::optional<TransformKind> parse_transform_kind(std::string_view name) {
  for (auto kind : kAllTransformKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

void require_size(int size) {
  if (size < 1) {
    throw Error(ErrorCode::InvalidDimension,
                "transform size must be >= 1, got " + std::to_string(size));
  }
}

Matrix dct2_closed_form(int n) {
  Matrix t(n, n);
  const double pi = std::numbers::pi;
  const double scale = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double ck = (k == 0) ? std::numbers::sqrt2 / 2.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      t(k, j) = scale * ck * std::cos(pi * k * (2.0 * j + 1.0) / (2.0 * n));
    }
  }
  return t;
}

Matrix dst7_closed_form(int n) {
  Matrix t(n, n);
  const double pi = std::numbers::pi;
  const double denom = 2.0 * n + 1.0;
  const double scale = 2.0 / std::sqrt(denom);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      t(k, j) = scale * std::sin(pi * (2.0 * k + 1.0) * (j + 1.0) / denom);
    }
  }
  return t;
}

}  // namespace

Matrix reverse_rows(const Matrix& m) { return m.colwise().reverse(); }

Matrix reverse_cols(const Matrix& m) { return m.rowwise().reverse(); }

Matrix alternate_row_signs(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 1; i < out.rows(); i += 2) out.row(i) = -out.row(i);
  return out;
}

Matrix alternate_col_signs(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index j = 1; j < out.cols(); j += 2) out.col(j) = -out.col(j);
  return out;
}

TransformMatrix build_transform(TransformKind kind, int size) {
  require_size(size);
  switch (kind) {
    case TransformKind::DCT2:
      return {kind, dct2_closed_form(size)};
    case TransformKind::DCT3:
      return {kind, dct2_closed_form(size).transpose()};
    case TransformKind::DST2:
      // R C2 S
      return {kind, alternate_col_signs(reverse_rows(dct2_closed_form(size)))};
    case TransformKind::DST3: {
      // S C2^T R
      Matrix c3 = dct2_closed_form(size).transpose();
      return {kind, alternate_row_signs(reverse_cols(c3))};
    }
    case TransformKind::DST7:
      return {kind, dst7_closed_form(size)};
    case TransformKind::DCT8:
      return flip_to_dct8({TransformKind::DST7, dst7_closed_form(size)});
  }
  throw Error(ErrorCode::KindMismatch, "unknown transform kind");
}

SignFlipMatrices sign_flip_matrices(int size) {
  require_size(size);
  SignFlipMatrices out{size, IntMatrix::Zero(size, size),
                       IntMatrix::Zero(size, size)};
  for (int m = 0; m < size; ++m) {
    out.reversal(m, size - 1 - m) = 1;
    out.signs(m, m) = (m % 2 == 0) ? 1 : -1;
  }
  return out;
}

TransformMatrix flip_to_dct8(const TransformMatrix& dst7) {
  if (dst7.kind != TransformKind::DST7) {
    throw Error(ErrorCode::KindMismatch,
                "flip_to_dct8 expects a dst7 matrix, got " +
                    std::string(to_string(dst7.kind)));
  }
  return {TransformKind::DCT8,
          alternate_row_signs(reverse_cols(dst7.entries))};
}

Matrix compose_pipeline(const Matrix& post, const Matrix& base,
                        const Matrix& pre) {
  const auto n = base.rows();
  if (base.cols() != n || post.rows() != n || post.cols() != n ||
      pre.rows() != n || pre.cols() != n) {
    throw Error(ErrorCode::Shape, "compose_pipeline operands must all be " +
                                      std::to_string(n) + "x" +
                                      std::to_string(n));
  }
  return post * base * pre;
}

Matrix compose_pipeline(const Matrix& post, const TransformMatrix& base,
                        const Matrix& pre) {
  return compose_pipeline(post, base.entries, pre);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::Shape, "max_abs_diff shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double orthogonality_error(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::Shape, "orthogonality_error needs a square matrix");
  }
  return max_abs_diff(m * m.transpose(), Matrix::Identity(m.rows(), m.cols()));
}

}  // namespace tadj
