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

// Generators and reference implementations shared by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tadj/adjustment_design.hpp"
#include "tadj/transform_matrices.hpp"

namespace tadj::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector random_vector(std::mt19937_64& g, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(g);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& g, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(g);
  }
  return m;
}

inline double random_angle(std::mt19937_64& g) {
  return std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(g);
}

/// Skeleton of `pattern` with random angles.
inline GivensSchedule random_schedule(std::mt19937_64& g, const SparsityPattern& pattern) {
  auto s = pattern_schedule_template(pattern);
  for (auto& layer : s.layers) {
    for (auto& r : layer) r.theta = random_angle(g);
  }
  return s;
}

/// Random schedule with arbitrary disjoint pairs per layer.
inline GivensSchedule random_free_schedule(std::mt19937_64& g, int n, int layers) {
  GivensSchedule s{n, {}};
  std::vector<int> idx(n);
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), g);
    std::vector<Rotation> layer;
    for (int k = 0; k + 1 < n; k += 2) {
      const int a = std::min(idx[k], idx[k + 1]);
      const int b = std::max(idx[k], idx[k + 1]);
      layer.push_back({a, b, random_angle(g)});
    }
    s.layers.push_back(std::move(layer));
  }
  return s;
}

/// Plain product of full N x N rotation matrices, G_{L-1} ... G_0.
inline Matrix naive_givens_product(const GivensSchedule& s) {
  Matrix m = Matrix::Identity(s.size, s.size);
  for (const auto& layer : s.layers) {
    for (const auto& r : layer) {
      Matrix g = Matrix::Identity(s.size, s.size);
      g(r.i, r.i) = std::cos(r.theta);
      g(r.j, r.j) = std::cos(r.theta);
      g(r.i, r.j) = -std::sin(r.theta);
      g(r.j, r.i) = std::sin(r.theta);
      m = g * m;
    }
  }
  return m;
}

/// Random adjustment realized from a random schedule of `pattern`.
inline AdjustmentMatrix random_adjustment(std::mt19937_64& g, const SparsityPattern& pattern,
                                          Side side, TransformKind base, TransformKind target) {
  AdjustmentMatrix a;
  a.pattern = pattern;
  a.side = side;
  a.base = base;
  a.target = target;
  a.schedule = random_schedule(g, pattern);
  a.realized = givens_to_matrix(a.schedule);
  return a;
}

/// Unnormalized weighted squared error by explicit loops.
inline double naive_weighted_error(const Matrix& h, const Matrix& d, double alpha) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double e = h(i, j) - d(i, j);
      sum += std::exp(-alpha * static_cast<double>(i)) * e * e;
    }
  }
  return sum;
}

/// 10 log10(AM / GM) of diag(T K T^T), by explicit loops.
inline double naive_coding_gain(const Matrix& t, const Matrix& k) {
  const Eigen::Index n = t.rows();
  double am = 0.0;
  double log_gm = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    double v = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) v += t(r, a) * k(a, b) * t(r, b);
    }
    am += v;
    log_gm += std::log(v);
  }
  am /= static_cast<double>(n);
  log_gm /= static_cast<double>(n);
  return 10.0 * std::log10(am) - 10.0 * log_gm / std::log(10.0);
}

}  // namespace tadj::testing
