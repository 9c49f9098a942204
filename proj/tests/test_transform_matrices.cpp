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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "support.hpp"
#include "tadj/error.hpp"
#include "tadj/transform_matrices.hpp"

using namespace tadj;

namespace {

const int kSizes[] = {1, 2, 3, 4, 5, 7, 8, 16, 31, 32, 64};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tadj::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("dct2 of size 4 has the tabulated entries") {
  const auto c = build_transform(TransformKind::DCT2, 4).entries;
  const double a = 0.65328148243818826;
  const double b = 0.27059805007309851;
  const double expected[4][4] = {
      {0.5, 0.5, 0.5, 0.5}, {a, b, -b, -a}, {0.5, -0.5, -0.5, 0.5}, {b, -a, a, -b}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(c(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-15));
  }
}

TEST_CASE("size one transforms are the unit matrix") {
  for (auto kind : kAllTransformKinds) {
    const auto t = build_transform(kind, 1).entries;
    CHECK(std::abs(std::abs(t(0, 0)) - 1.0) < 1e-15);
  }
}

TEST_CASE("every kind is orthonormal") {
  for (int n : kSizes) {
    for (auto kind : kAllTransformKinds) {
      CAPTURE(n);
      CAPTURE(to_string(kind));
      CHECK(orthogonality_error(build_transform(kind, n).entries) < 1e-13);
    }
  }
}

TEST_CASE("dst7 diagonalizes the one-sided covariance") {
  for (int n : {4, 8, 16, 32}) {
    Matrix k(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) k(i, j) = std::min(i, j) + 1.0;
    }
    const Matrix s7 = build_transform(TransformKind::DST7, n).entries;
    const Matrix lambda = s7 * k * s7.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (r != c) CHECK(std::abs(lambda(r, c)) < 1e-9 * lambda(0, 0));
      }
      // Eigen sorts ascending; row r pairs with eigenvector n-1-r.
      CHECK(lambda(r, r) == doctest::Approx(eig.eigenvalues()(n - 1 - r)).epsilon(1e-10));
      CHECK(std::abs(std::abs(s7.row(r).dot(eig.eigenvectors().col(n - 1 - r))) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("dct2 diagonalizes the path graph laplacian") {
  for (int n : {4, 8, 16, 64}) {
    Matrix l = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      l(i, i) = (i == 0 || i == n - 1) ? 1.0 : 2.0;
      if (i + 1 < n) l(i, i + 1) = l(i + 1, i) = -1.0;
    }
    const Matrix c2 = build_transform(TransformKind::DCT2, n).entries;
    const Matrix d = c2 * l * c2.transpose();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double want = r == c ? 2.0 - 2.0 * std::cos(std::numbers::pi * r / n) : 0.0;
        CHECK(std::abs(d(r, c) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("dst2 and dct8 match their own closed forms") {
  const double pi = std::numbers::pi;
  for (int n : {2, 4, 8, 13, 32}) {
    const auto s2 = build_transform(TransformKind::DST2, n).entries;
    const auto c8 = build_transform(TransformKind::DCT8, n).entries;
    for (int k = 0; k < n; ++k) {
      const double ck = k == n - 1 ? std::sqrt(0.5) : 1.0;
      for (int m = 0; m < n; ++m) {
        const double want2 =
            std::sqrt(2.0 / n) * ck * std::sin(pi * (k + 1) * (2 * m + 1) / (2.0 * n));
        const double want8 = 2.0 / std::sqrt(2.0 * n + 1) *
                             std::cos(pi * (2 * k + 1) * (2 * m + 1) / (4.0 * n + 2));
        CHECK(std::abs(s2(k, m) - want2) < 1e-13);
        CHECK(std::abs(c8(k, m) - want8) < 1e-13);
      }
    }
  }
}

TEST_CASE("transposition relations are exact") {
  for (int n : kSizes) {
    const auto c2 = build_transform(TransformKind::DCT2, n).entries;
    const auto c3 = build_transform(TransformKind::DCT3, n).entries;
    const auto s2 = build_transform(TransformKind::DST2, n).entries;
    const auto s3 = build_transform(TransformKind::DST3, n).entries;
    CHECK(max_abs_diff(c3, c2.transpose()) == 0.0);
    CHECK(max_abs_diff(s3, s2.transpose()) == 0.0);
  }
}

TEST_CASE("sign and reversal matrices are involutions") {
  for (int n : kSizes) {
    const auto f = sign_flip_matrices(n);
    const IntMatrix id = IntMatrix::Identity(n, n);
    CHECK(f.reversal * f.reversal == id);
    CHECK(f.signs * f.signs == id);
    for (int i = 0; i < n; ++i) {
      CHECK(f.reversal(i, n - 1 - i) == 1);
      CHECK(f.signs(i, i) == (i % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("exact helpers agree with integer matrix products") {
  auto g = testing::rng(11);
  for (int n : {1, 4, 7}) {
    const Matrix m = testing::random_matrix(g, n, n);
    const auto f = sign_flip_matrices(n);
    const Matrix r = f.reversal.cast<double>();
    const Matrix s = f.signs.cast<double>();
    CHECK(max_abs_diff(reverse_rows(m), r * m) == 0.0);
    CHECK(max_abs_diff(reverse_cols(m), m * r) == 0.0);
    CHECK(max_abs_diff(alternate_row_signs(m), s * m) == 0.0);
    CHECK(max_abs_diff(alternate_col_signs(m), m * s) == 0.0);
  }
}

TEST_CASE("flip_to_dct8 reproduces the dct8 matrix") {
  for (int n : kSizes) {
    const auto s7 = build_transform(TransformKind::DST7, n);
    const auto c8 = flip_to_dct8(s7);
    CHECK(c8.kind == TransformKind::DCT8);
    CHECK(max_abs_diff(c8.entries, build_transform(TransformKind::DCT8, n).entries) == 0.0);
  }
  CHECK(code_of([] { flip_to_dct8(build_transform(TransformKind::DCT2, 4)); }) ==
        ErrorCode::KindMismatch);
}

TEST_CASE("compose_pipeline multiplies post, base and pre") {
  auto g = testing::rng(5);
  const auto b = build_transform(TransformKind::DST3, 6);
  const Matrix a = testing::random_matrix(g, 6, 6);
  const Matrix c = testing::random_matrix(g, 6, 6);
  CHECK(max_abs_diff(compose_pipeline(c, b, a), c * b.entries * a) < 1e-14);
  CHECK(code_of([&] { compose_pipeline(Matrix::Identity(5, 5), b, a); }) == ErrorCode::Shape);
}

TEST_CASE("invalid sizes are rejected") {
  CHECK(code_of([] { build_transform(TransformKind::DCT2, 0); }) == ErrorCode::InvalidDimension);
  CHECK(code_of([] { build_transform(TransformKind::DST7, -3); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("kind names round trip") {
  for (auto kind : kAllTransformKinds) CHECK(parse_transform_kind(to_string(kind)) == kind);
  CHECK_FALSE(parse_transform_kind("dst4").has_value());
  CHECK_FALSE(parse_transform_kind("").has_value());
}
