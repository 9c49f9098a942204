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
#include <cstdint>
#include <span>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "tadj/error.hpp"
#include "tadj/fast_dct_kernels.hpp"
#include "tadj/fast_transform.hpp"

using namespace tadj;

namespace {

// Scalar that counts the arithmetic performed on it.
struct Counted {
  double v = 0.0;
  static inline std::int64_t mults = 0;
  static inline std::int64_t adds = 0;
  static void reset() { mults = adds = 0; }
};

Counted operator+(Counted a, Counted b) {
  ++Counted::adds;
  return {a.v + b.v};
}
Counted operator-(Counted a, Counted b) {
  ++Counted::adds;
  return {a.v - b.v};
}
Counted operator*(Counted a, double k) {
  if (k != 0.0 && k != 1.0 && k != -1.0) ++Counted::mults;
  return {a.v * k};
}

template <int N>
void count_kernels(std::int64_t& fwd_m, std::int64_t& fwd_a, std::int64_t& inv_m,
                   std::int64_t& inv_a, double& err) {
  Counted in[N];
  Counted out[N];
  for (int i = 0; i < N; ++i) in[i].v = std::sin(0.7 * i + 0.1);
  Counted::reset();
  kernels::dct2<Counted, N>(in, out);
  fwd_m = Counted::mults;
  fwd_a = Counted::adds;
  const Matrix c = build_transform(TransformKind::DCT2, N).entries;
  err = 0.0;
  for (int k = 0; k < N; ++k) {
    double want = 0.0;
    for (int n = 0; n < N; ++n) want += c(k, n) * in[n].v;
    err = std::max(err, std::abs(want - out[k].v));
  }
  Counted::reset();
  kernels::idct2<Counted, N>(in, out);
  inv_m = Counted::mults;
  inv_a = Counted::adds;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tadj::Error");
  return ErrorCode::Io;
}

void check_count(int n, std::int64_t fm, std::int64_t fa, std::int64_t im, std::int64_t ia,
                 double err) {
  CAPTURE(n);
  const auto c = fast_dct2_count(n);
  CHECK(c.multiplications == fm);
  CHECK(c.additions == fa);
  CHECK(c.multiplications == im);
  CHECK(c.additions == ia);
  CHECK(c.multiplications < static_cast<std::int64_t>(n) * n);
  CHECK(err < 1e-12);
}

}  // namespace

TEST_CASE("instrumented kernels agree with the analytic count") {
  std::int64_t fm, fa, im, ia;
  double err;
  count_kernels<4>(fm, fa, im, ia, err);
  check_count(4, fm, fa, im, ia, err);
  count_kernels<8>(fm, fa, im, ia, err);
  check_count(8, fm, fa, im, ia, err);
  count_kernels<16>(fm, fa, im, ia, err);
  check_count(16, fm, fa, im, ia, err);
  count_kernels<32>(fm, fa, im, ia, err);
  check_count(32, fm, fa, im, ia, err);
  count_kernels<64>(fm, fa, im, ia, err);
  check_count(64, fm, fa, im, ia, err);
}

TEST_CASE("fast dct2 of zero and constant inputs") {
  for (int n : {4, 8, 16, 32, 64}) {
    CHECK(fast_dct2(Vector::Zero(n)).cwiseAbs().maxCoeff() == 0.0);
    const double c = 1.75;
    const Vector y = fast_dct2(Vector::Constant(n, c));
    CHECK(y(0) == doctest::Approx(c * std::sqrt(static_cast<double>(n))).epsilon(1e-14));
    CHECK(y.tail(n - 1).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("fast base transforms match dense oracles") {
  auto g = testing::rng(17);
  for (int n : {4, 8, 16, 32, 64}) {
    const Matrix c2 = build_transform(TransformKind::DCT2, n).entries;
    const Matrix s3 = build_transform(TransformKind::DST3, n).entries;
    const Matrix s2 = build_transform(TransformKind::DST2, n).entries;
    for (int trial = 0; trial < 20; ++trial) {
      const Vector x = testing::random_vector(g, n);
      Vector y(n);
      const std::span<const double> xs(x.data(), n);
      const std::span<double> ys(y.data(), n);
      fast_dct2(xs, ys);
      CHECK((y - c2 * x).cwiseAbs().maxCoeff() < 1e-10);
      fast_idct2(xs, ys);
      CHECK((y - c2.transpose() * x).cwiseAbs().maxCoeff() < 1e-10);
      fast_dst3_via_dct2(xs, ys);
      CHECK((y - s3 * x).cwiseAbs().maxCoeff() < 1e-10);
      fast_dst2_via_dct2(xs, ys);
      CHECK((y - s2 * x).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((fast_dst3_via_dct2(x) - s3 * x).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("unsupported fast sizes") {
  CHECK_FALSE(fast_size_supported(12));
  CHECK_FALSE(fast_size_supported(2));
  CHECK_FALSE(fast_size_supported(128));
  CHECK(code_of([] { fast_dct2(Vector::Zero(12)); }) == ErrorCode::InvalidDimension);
  CHECK(code_of([] { fast_dct2_count(3); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("base paths") {
  CHECK(base_path_for(TransformKind::DCT2) == BasePath::FastDCT2);
  CHECK(base_path_for(TransformKind::DST3) == BasePath::FastDST3ViaDCT2);
  CHECK(code_of([] { base_path_for(TransformKind::DST7); }) == ErrorCode::KindMismatch);
}

TEST_CASE("band and sub-block application match dense products") {
  auto g = testing::rng(23);
  for (int n : {8, 16, 32}) {
    for (int k : {2, 4, 6}) {
      const auto a = testing::random_adjustment(g, SparsityPattern::band(k, n), Side::Pre,
                                                TransformKind::DST3, TransformKind::DST7);
      const Vector x = testing::random_vector(g, n);
      CHECK((apply_band(a, x) - a.realized * x).cwiseAbs().maxCoeff() < 1e-12);
      CHECK_THROWS_AS(apply_subblock(a, x), Error);
    }
    const auto s = testing::random_adjustment(g, SparsityPattern::subblock(8, n), Side::Post,
                                              TransformKind::DCT2, TransformKind::DST7);
    const Vector y = testing::random_vector(g, n);
    const Vector z = apply_subblock(s, y);
    CHECK((z - s.realized * y).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((z.tail(n - 8).array() == y.tail(n - 8).array()).all());
  }
}

TEST_CASE("band support stays inside the pattern") {
  for (int k : {1, 2, 4, 6}) {
    const auto s = pattern_schedule_template(SparsityPattern::band(k, 20));
    const auto support = structural_support(s);
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        if (support(i, j)) CHECK(std::abs(i - j) < k);
      }
      CHECK(support.row(i).count() <= 2 * k - 1);
    }
  }
}

TEST_CASE("adjusted pipelines match compose_pipeline and invert") {
  auto g = testing::rng(31);
  struct Case {
    SparsityPattern pattern;
    Side side;
    TransformKind base;
  };
  for (int n : {8, 16, 32, 64}) {
    const Case cases[] = {
        {SparsityPattern::band(4, n), Side::Pre, TransformKind::DST3},
        {SparsityPattern::band(6, n), Side::Pre, TransformKind::DST3},
        {SparsityPattern::subblock(8, n), Side::Post, TransformKind::DCT2},
        {SparsityPattern::band(3, n), Side::Post, TransformKind::DCT2},
        {SparsityPattern::dense(n), Side::Pre, TransformKind::DST2},
        {SparsityPattern::subblock(4, n), Side::Pre, TransformKind::DCT3},
    };
    for (const auto& c : cases) {
      const auto a = testing::random_adjustment(g, c.pattern, c.side, c.base, TransformKind::DST7);
      const AdjustedTransform t(a);
      const Matrix h = composed_matrix(a);
      CHECK(max_abs_diff(t.dense(), h) < 1e-12);
      for (int trial = 0; trial < 10; ++trial) {
        const Vector x = testing::random_vector(g, n);
        const Vector y = t.forward(x);
        CHECK((y - h * x).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((t.inverse(y) - x).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("adjusted pipelines reject broken adjustments") {
  auto g = testing::rng(37);
  auto a = testing::random_adjustment(g, SparsityPattern::band(3, 8), Side::Pre,
                                      TransformKind::DST3, TransformKind::DST7);
  a.realized(0, 0) += 1e-3;
  CHECK_THROWS_AS(AdjustedTransform{a}, Error);
  auto b = testing::random_adjustment(g, SparsityPattern::band(3, 12), Side::Pre,
                                      TransformKind::DST3, TransformKind::DST7);
  CHECK_THROWS_AS(AdjustedTransform{b}, Error);  // no fast path for 12
}

TEST_CASE("pipeline op counts follow the structure") {
  auto g = testing::rng(41);
  const int n = 32;
  const auto band = testing::random_adjustment(g, SparsityPattern::band(4, n), Side::Pre,
                                               TransformKind::DST3, TransformKind::DST7);
  const auto support = structural_support(band.schedule);
  const std::int64_t nnz = support.count();
  const auto c = op_count(AdjustedTransform(band));
  CHECK(c.multiplications == nnz + fast_dct2_count(n).multiplications);
  CHECK(c.additions == nnz - n + fast_dct2_count(n).additions);

  const auto sb = testing::random_adjustment(g, SparsityPattern::subblock(8, n), Side::Post,
                                             TransformKind::DCT2, TransformKind::DST7);
  const auto s = op_count(AdjustedTransform(sb));
  CHECK(s.multiplications == 64 + fast_dct2_count(n).multiplications);
  CHECK(s.additions == 56 + fast_dct2_count(n).additions);
  CHECK(s.coefficients == n);
}

TEST_CASE("dense counts") {
  CHECK(dense_count_1d(32).multiplications == 1024);
  CHECK(dense_count_1d(32).additions == 992);
  const auto d2 = dense_count_2d(32, 32);
  CHECK(d2.per_coefficient_mults() == 64.0);
  CHECK(dense_count_2d(64, 64).per_coefficient_mults() == 128.0);
}

TEST_CASE("2-D sub-block pipeline stays below 40 multiplications per coefficient") {
  auto g = testing::rng(43);
  for (int n : {32, 64}) {
    const auto a = testing::random_adjustment(g, SparsityPattern::subblock(8, n), Side::Post,
                                              TransformKind::DCT2, TransformKind::DST7);
    const AdjustedTransform t(a);
    const auto c = op_count_2d(t, t);
    CHECK(c.coefficients == n * n);
    CHECK(c.multiplications == 2 * n * op_count(t).multiplications);
    CHECK(c.per_coefficient_mults() < 40.0);
  }
}

TEST_CASE("2-D transforms are separable products") {
  auto g = testing::rng(47);
  const auto h = testing::random_adjustment(g, SparsityPattern::subblock(8, 16), Side::Post,
                                            TransformKind::DCT2, TransformKind::DST7);
  const auto v = testing::random_adjustment(g, SparsityPattern::band(4, 32), Side::Pre,
                                            TransformKind::DST3, TransformKind::DST7);
  const AdjustedTransform th(h);
  const AdjustedTransform tv(v);
  const Matrix x = testing::random_matrix(g, 32, 16);
  const Matrix y = forward_2d(th, tv, x);
  CHECK(max_abs_diff(y, composed_matrix(v) * x * composed_matrix(h).transpose()) < 1e-12);
  CHECK(max_abs_diff(inverse_2d(th, tv, y), x) < 1e-12);
}

TEST_CASE("simultaneous encoder reproduces the five naive outputs") {
  auto g = testing::rng(53);
  for (auto [w, hgt] : {std::pair{32, 32}, std::pair{64, 32}, std::pair{16, 64}}) {
    EncoderContext ctx;
    ctx.horizontal = testing::random_adjustment(g, SparsityPattern::subblock(8, w), Side::Post,
                                                TransformKind::DCT2, TransformKind::DST7);
    ctx.vertical = testing::random_adjustment(g, SparsityPattern::subblock(8, hgt), Side::Post,
                                              TransformKind::DCT2, TransformKind::DST7);
    const Matrix x = testing::random_matrix(g, hgt, w);
    const auto out = simultaneous_encoder_eval(x, ctx);

    const Matrix ch = build_transform(TransformKind::DCT2, w).entries;
    const Matrix cv = build_transform(TransformKind::DCT2, hgt).entries;
    CHECK(max_abs_diff(out.dct2, cv * x * ch.transpose()) < 1e-9);
    const Matrix h7 = composed_matrix(*ctx.horizontal);
    const Matrix h8 = composed_matrix(dct8_adjustment_from_dst7(*ctx.horizontal));
    const Matrix v7 = composed_matrix(*ctx.vertical);
    const Matrix v8 = composed_matrix(dct8_adjustment_from_dst7(*ctx.vertical));
    const Matrix* hs[2] = {&h7, &h8};
    const Matrix* vs[2] = {&v7, &v8};
    int changed = 0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Matrix& got = out.combos[a][b];
        CHECK(max_abs_diff(got, *vs[b] * x * hs[a]->transpose()) < 1e-9);
        changed = 0;
        for (int r = 0; r < hgt; ++r) {
          for (int c = 0; c < w; ++c) {
            if (r >= 8 && c >= 8) {
              CHECK(got(r, c) == out.dct2(r, c));
            } else {
              ++changed;
            }
          }
        }
      }
    }
    if (w == 32 && hgt == 32) CHECK(changed * 10000 == 4375 * 32 * 32);
  }
}

TEST_CASE("encoder configuration errors") {
  EncoderContext empty;
  CHECK(code_of([&] { SimultaneousEncoder{empty}; }) == ErrorCode::Configuration);
  auto g = testing::rng(59);
  EncoderContext wrong;
  wrong.horizontal = testing::random_adjustment(g, SparsityPattern::band(3, 16), Side::Pre,
                                                TransformKind::DST3, TransformKind::DST7);
  wrong.vertical = wrong.horizontal;
  CHECK(code_of([&] { SimultaneousEncoder{wrong}; }) == ErrorCode::Configuration);
}
