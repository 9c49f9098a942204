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

// Recursive even/odd DCT-II and DCT-III kernels (Lee-type factorization).
//
// Unnormalized definitions for an N-point block:
//   DCT-II:  X[k] = sum_n x[n] cos(pi k (2n+1) / 2N)
//   DCT-III: x[n] = sum_k X[k] cos(pi k (2n+1) / 2N)
// The N-point forward transform splits into an N/2-point DCT-II of the sums
// x[n] + x[N-1-n] (even outputs) and an N/2-point DCT-II of the scaled
// differences (x[n] - x[N-1-n]) / (2 cos(pi (2n+1) / 2N)), whose outputs are
// combined pairwise into the odd outputs. The inverse is the transpose of that
// flow graph. Recursion ends at a 4-point butterfly.
//
// Kernels are templated on the scalar type so that an instrumented scalar can
// count the arithmetic they perform; the only operations used are a + b,
// a - b and a * double.

#include <array>
#include <cmath>
#include <numbers>

namespace tadj::kernels {

template <int N>
struct LeeTables {
  static_assert(N >= 4 && (N & (N - 1)) == 0, "N must be a power of two >= 4");
  // 1 / (2 cos(pi (2n+1) / 2N)), n < N/2
  std::array<double, N / 2> half_secant{};
  // orthonormal output scaling: sqrt(1/N) for k = 0, sqrt(2/N) otherwise
  std::array<double, N> scale{};

  LeeTables() {
    for (int n = 0; n < N / 2; ++n) {
      half_secant[n] = 1.0 / (2.0 * std::cos(std::numbers::pi * (2 * n + 1) / (2.0 * N)));
    }
    scale[0] = std::sqrt(1.0 / N);
    for (int k = 1; k < N; ++k) scale[k] = std::sqrt(2.0 / N);
  }

  static const LeeTables& get() {
    static const LeeTables tables;
    return tables;
  }
};

struct Base4Constants {
  double c1 = std::cos(std::numbers::pi / 8.0);
  double c3 = std::cos(3.0 * std::numbers::pi / 8.0);
  double c4 = std::cos(std::numbers::pi / 4.0);

  static const Base4Constants& get() {
    static const Base4Constants k;
    return k;
  }
};

template <typename T, int N>
void dct2_unnormalized(const T* in, T* out) {
  if constexpr (N == 4) {
    const auto& k = Base4Constants::get();
    const T e0 = in[0] + in[3];
    const T e1 = in[1] + in[2];
    const T o0 = in[0] - in[3];
    const T o1 = in[1] - in[2];
    out[0] = e0 + e1;
    out[2] = (e0 - e1) * k.c4;
    out[1] = o0 * k.c1 + o1 * k.c3;
    out[3] = o0 * k.c3 - o1 * k.c1;
  } else {
    constexpr int H = N / 2;
    const auto& t = LeeTables<N>::get();
    T even[H];
    T odd[H];
    for (int n = 0; n < H; ++n) {
      even[n] = in[n] + in[N - 1 - n];
      odd[n] = (in[n] - in[N - 1 - n]) * t.half_secant[n];
    }
    T e[H];
    T o[H];
    dct2_unnormalized<T, H>(even, e);
    dct2_unnormalized<T, H>(odd, o);
    for (int k = 0; k < H - 1; ++k) {
      out[2 * k] = e[k];
      out[2 * k + 1] = o[k] + o[k + 1];
    }
    out[N - 2] = e[H - 1];
    out[N - 1] = o[H - 1];
  }
}

template <typename T, int N>
void dct3_unnormalized(const T* in, T* out) {
  if constexpr (N == 4) {
    const auto& k = Base4Constants::get();
    const T t2 = in[2] * k.c4;
    const T e0 = in[0] + t2;
    const T e1 = in[0] - t2;
    const T o0 = in[1] * k.c1 + in[3] * k.c3;
    const T o1 = in[1] * k.c3 - in[3] * k.c1;
    out[0] = e0 + o0;
    out[3] = e0 - o0;
    out[1] = e1 + o1;
    out[2] = e1 - o1;
  } else {
    constexpr int H = N / 2;
    const auto& t = LeeTables<N>::get();
    T even[H];
    T odd[H];
    even[0] = in[0];
    odd[0] = in[1];
    for (int k = 1; k < H; ++k) {
      even[k] = in[2 * k];
      odd[k] = in[2 * k + 1] + in[2 * k - 1];
    }
    T a[H];
    T b[H];
    dct3_unnormalized<T, H>(even, a);
    dct3_unnormalized<T, H>(odd, b);
    for (int n = 0; n < H; ++n) {
      const T scaled = b[n] * t.half_secant[n];
      out[n] = a[n] + scaled;
      out[N - 1 - n] = a[n] - scaled;
    }
  }
}

/// Orthonormal DCT-II: out = C2 in.
template <typename T, int N>
void dct2(const T* in, T* out) {
  dct2_unnormalized<T, N>(in, out);
  const auto& t = LeeTables<N>::get();
  for (int k = 0; k < N; ++k) out[k] = out[k] * t.scale[k];
}

/// Orthonormal inverse DCT-II: out = C2^T in.
template <typename T, int N>
void idct2(const T* in, T* out) {
  const auto& t = LeeTables<N>::get();
  T scaled[N];
  for (int k = 0; k < N; ++k) scaled[k] = in[k] * t.scale[k];
  dct3_unnormalized<T, N>(scaled, out);
}

}  // namespace tadj::kernels
