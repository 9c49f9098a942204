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

#include "tadj/adjustment_design.hpp"

#include "tadj/error.hpp"
#include "tadj/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace tadj {

// ---------------------------------------------------------------------------
// Patterns

SparsityPattern SparsityPattern::band(int taps, int size) {
  if (size < 1) throw Error(ErrorCode::InvalidDimension, "pattern size must be >= 1");
  if (taps < 1 || taps > size) {
    throw Error(ErrorCode::Pattern, "band taps must be in [1, " +
                                        std::to_string(size) + "], got " +
                                        std::to_string(taps));
  }
  return {PatternVariant::Band, taps, size};
}

SparsityPattern SparsityPattern::subblock(int order, int size) {
  if (size < 1) throw Error(ErrorCode::InvalidDimension, "pattern size must be >= 1");
  if (order < 1 || order > size) {
    throw Error(ErrorCode::Pattern, "sub-block order must be in [1, " +
                                        std::to_string(size) + "], got " +
                                        std::to_string(order));
  }
  return {PatternVariant::SubBlock, order, size};
}

SparsityPattern SparsityPattern::dense(int size) {
  if (size < 1) throw Error(ErrorCode::InvalidDimension, "pattern size must be >= 1");
  return {PatternVariant::Dense, size, size};
}

bool SparsityPattern::allows(int i, int j) const noexcept {
  switch (variant) {
    case PatternVariant::Band: return std::abs(i - j) < parameter;
    case PatternVariant::SubBlock: return i < parameter && j < parameter;
    case PatternVariant::Dense: return true;
  }
  return false;
}

std::string SparsityPattern::to_string() const {
  switch (variant) {
    case PatternVariant::Band: return "band:" + std::to_string(parameter);
    case PatternVariant::SubBlock: return "subblock:" + std::to_string(parameter);
    case PatternVariant::Dense: return "dense";
  }
  return "?";
}

SparsityPattern parse_pattern(std::string_view text, int size) {
  if (text == "dense") return SparsityPattern::dense(size);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::Parse, "pattern must be band:K, subblock:B or dense, got '" +
                                      std::string(text) + "'");
  }
  const auto name = text.substr(0, colon);
  const auto value = parse_integer(text.substr(colon + 1));
  if (value < 1 || value > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::Pattern, "pattern parameter out of range");
  }
  if (name == "band") return SparsityPattern::band(static_cast<int>(value), size);
  if (name == "subblock") return SparsityPattern::subblock(static_cast<int>(value), size);
  throw Error(ErrorCode::Parse, "unknown pattern '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Givens schedules

int GivensSchedule::rotation_count() const noexcept {
  int count = 0;
  for (const auto& layer : layers) count += static_cast<int>(layer.size());
  return count;
}

void validate_schedule(const GivensSchedule& schedule) {
  if (schedule.size < 1) {
    throw Error(ErrorCode::InvalidSchedule, "schedule size must be >= 1");
  }
  std::vector<int> seen(static_cast<std::size_t>(schedule.size), -1);
  for (std::size_t l = 0; l < schedule.layers.size(); ++l) {
    for (const auto& r : schedule.layers[l]) {
      if (r.i < 0 || r.j >= schedule.size || r.i >= r.j) {
        throw Error(ErrorCode::InvalidSchedule,
                    "rotation (" + std::to_string(r.i) + ", " +
                        std::to_string(r.j) + ") invalid for size " +
                        std::to_string(schedule.size));
      }
      if (!std::isfinite(r.theta)) {
        throw Error(ErrorCode::InvalidSchedule, "rotation angle is not finite");
      }
      for (int idx : {r.i, r.j}) {
        if (seen[idx] == static_cast<int>(l)) {
          throw Error(ErrorCode::InvalidSchedule,
                      "index " + std::to_string(idx) + " used twice in layer " +
                          std::to_string(l));
        }
        seen[idx] = static_cast<int>(l);
      }
    }
  }
}

namespace {

// Rows i and j of m become G(theta) applied to them.
void rotate_rows(Matrix& m, int i, int j, double c, double s) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const double a = m(i, k);
    const double b = m(j, k);
    m(i, k) = c * a - s * b;
    m(j, k) = s * a + c * b;
  }
}

// m <- m G^T for one rotation.
void rotate_cols_transposed(Matrix& m, int i, int j, double c, double s) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const double a = m(k, i);
    const double b = m(k, j);
    m(k, i) = c * a - s * b;
    m(k, j) = s * a + c * b;
  }
}

void apply_layer(Matrix& m, const std::vector<Rotation>& layer) {
  for (const auto& r : layer) {
    rotate_rows(m, r.i, r.j, std::cos(r.theta), std::sin(r.theta));
  }
}

// Circle-method round robin: every pair of 0..m-1 exactly once, grouped into
// rounds of disjoint pairs.
std::vector<std::vector<Rotation>> round_robin_layers(int m) {
  std::vector<std::vector<Rotation>> layers;
  if (m < 2) return layers;
  const int players = (m % 2 == 0) ? m : m + 1;
  std::vector<int> ring(static_cast<std::size_t>(players));
  for (int p = 0; p < players; ++p) ring[p] = p;
  for (int round = 0; round < players - 1; ++round) {
    std::vector<Rotation> layer;
    for (int k = 0; k < players / 2; ++k) {
      int a = ring[k];
      int b = ring[players - 1 - k];
      if (a >= m || b >= m) continue;
      if (a > b) std::swap(a, b);
      layer.push_back({a, b, 0.0});
    }
    std::sort(layer.begin(), layer.end(),
              [](const Rotation& x, const Rotation& y) { return x.i < y.i; });
    layers.push_back(std::move(layer));
    // keep ring[0] fixed, rotate the rest by one
    std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
  }
  return layers;
}

}  // namespace

Matrix givens_to_matrix(const GivensSchedule& schedule) {
  validate_schedule(schedule);
  Matrix m = Matrix::Identity(schedule.size, schedule.size);
  for (const auto& layer : schedule.layers) apply_layer(m, layer);
  return m;
}

GivensSchedule pattern_schedule_template(const SparsityPattern& pattern) {
  GivensSchedule schedule{pattern.size, {}};
  switch (pattern.variant) {
    case PatternVariant::Band:
      for (int l = 0; l + 1 < pattern.parameter; ++l) {
        std::vector<Rotation> layer;
        for (int i = l % 2; i + 1 < pattern.size; i += 2) {
          layer.push_back({i, i + 1, 0.0});
        }
        if (!layer.empty()) schedule.layers.push_back(std::move(layer));
      }
      break;
    case PatternVariant::SubBlock:
      schedule.layers = round_robin_layers(pattern.parameter);
      break;
    case PatternVariant::Dense:
      schedule.layers = round_robin_layers(pattern.size);
      break;
  }
  return schedule;
}

// ---------------------------------------------------------------------------
// Objective

std::string_view to_string(Side side) noexcept {
  return side == Side::Pre ? "pre" : "post";
}

std::optional<Side> parse_side(std::string_view text) {
  if (text == "pre") return Side::Pre;
  if (text == "post") return Side::Post;
  return std::nullopt;
}

double default_alpha(int size) { return std::log(100.0) / size; }

double DesignConfig::alpha_for(int size) const {
  return alpha.value_or(default_alpha(size));
}

void DesignConfig::validate(int size) const {
  const double a = alpha_for(size);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::Configuration, "alpha must be > 0");
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::Configuration, "tolerance must be > 0");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::Configuration, "max_iterations must be >= 1");
  }
  if (restarts < 0) {
    throw Error(ErrorCode::Configuration, "restarts must be >= 0");
  }
  if (!(sparsity_epsilon > 0.0)) {
    throw Error(ErrorCode::Configuration, "sparsity_epsilon must be > 0");
  }
}

namespace {

Vector row_weights(int n, double alpha) {
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = std::exp(-alpha * i);
  return w;
}

double weighted_sq(const Matrix& e, const Vector& w) {
  return (w.asDiagonal() * e.cwiseAbs2()).sum();
}

double weighted_dot(const Matrix& a, const Matrix& b, const Vector& w) {
  return (w.asDiagonal() * a.cwiseProduct(b)).sum();
}

double sparsity_penalty(const Matrix& x, double eps) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double v = x.data()[k];
    sum += v * v / (eps + std::abs(v));
  }
  return sum;
}

}  // namespace

double weighted_error(const Matrix& h, const Matrix& d, double alpha) {
  if (h.rows() != d.rows() || h.cols() != d.cols()) {
    throw Error(ErrorCode::Shape, "weighted_error shape mismatch");
  }
  return weighted_sq(h - d, row_weights(static_cast<int>(h.rows()), alpha));
}

Matrix composed_matrix(const AdjustmentMatrix& adjustment) {
  const auto base = build_transform(adjustment.base, adjustment.size());
  return adjustment.side == Side::Pre ? Matrix(base.entries * adjustment.realized)
                                      : Matrix(adjustment.realized * base.entries);
}

// ---------------------------------------------------------------------------
// Coordinate descent over Givens angles

namespace {

struct Problem {
  const Matrix* base;
  const Matrix* desired;
  Side side;
  Vector weights;
  std::optional<double> penalty_eps;  // set for sparsity discovery
};

struct RunResult {
  GivensSchedule schedule;
  double objective = 0.0;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> trace;
};

Matrix compose(const Problem& p, const Matrix& adj) {
  return p.side == Side::Pre ? Matrix(*p.base * adj) : Matrix(adj * *p.base);
}

double full_objective(const Problem& p, const Matrix& adj) {
  double f = weighted_sq(compose(p, adj) - *p.desired, p.weights);
  if (p.penalty_eps) f += sparsity_penalty(adj, *p.penalty_eps);
  return f;
}

// Minimizes g over [-pi/2, pi/2]: coarse grid, then golden-section in the
// bracket around the best grid point. Ties prefer the smaller |theta|.
template <typename F>
double minimize_angle(F&& g) {
  constexpr int kGrid = 48;
  const double half_pi = std::numbers::pi / 2.0;
  const double step = std::numbers::pi / kGrid;
  int best = kGrid / 2;  // theta = 0
  double best_val = g(0.0);
  for (int k = 0; k <= kGrid; ++k) {
    const double theta = -half_pi + k * step;
    const double v = g(theta);
    const bool better = v < best_val ||
                        (v == best_val && std::abs(theta) < std::abs(-half_pi + best * step));
    if (better) {
      best = k;
      best_val = v;
    }
  }
  double best_theta = (best == kGrid / 2) ? 0.0 : -half_pi + best * step;

  double lo = std::max(-half_pi, best_theta - step);
  double hi = std::min(half_pi, best_theta + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = g(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = g(mid);
  if (fm < best_val) {
    best_theta = mid;
  }
  return best_theta;
}

RunResult coordinate_descent(const Problem& p, GivensSchedule schedule,
                             const DesignConfig& config) {
  const int n = schedule.size;
  const int num_layers = static_cast<int>(schedule.layers.size());
  RunResult result;

  Matrix adj = givens_to_matrix(schedule);
  double f = full_objective(p, adj);
  result.trace.push_back(f);

  if (num_layers == 0) {
    result.schedule = std::move(schedule);
    result.objective = f;
    result.converged = true;
    return result;
  }

  const Matrix& b = *p.base;
  const Matrix& d = *p.desired;

  for (int sweep = 0; sweep < config.max_iterations; ++sweep) {
    // after[l] = G_{L-1} ... G_{l+1}; built incrementally from after[0].
    Matrix after = Matrix::Identity(n, n);
    for (int l = num_layers - 1; l >= 1; --l) {
      // after = after * G_l  (G_l applied on the right): columns rotate.
      for (const auto& r : schedule.layers[l]) {
        // m G = (G^T m^T)^T; for columns: m(:,i), m(:,j) <- combination
        const double c = std::cos(r.theta);
        const double s = std::sin(r.theta);
        for (int k = 0; k < n; ++k) {
          const double a = after(k, r.i);
          const double bb = after(k, r.j);
          after(k, r.i) = c * a + s * bb;
          after(k, r.j) = -s * a + c * bb;
        }
      }
    }
    Matrix before = Matrix::Identity(n, n);  // G_{l-1} ... G_0
    Matrix adj_cur = adj;
    Matrix h_cur = compose(p, adj_cur);

    for (int l = 0; l < num_layers; ++l) {
      Matrix y = before;
      apply_layer(y, schedule.layers[l]);
      const Matrix left_h = (p.side == Side::Pre) ? Matrix(b * after) : after;

      for (auto& rot : schedule.layers[l]) {
        const int i = rot.i;
        const int j = rot.j;
        const double c0 = std::cos(rot.theta);
        const double s0 = std::sin(rot.theta);
        const Vector yr_i = y.row(i).transpose();
        const Vector yr_j = y.row(j).transpose();
        const Vector u_i = c0 * yr_i + s0 * yr_j;
        const Vector u_j = -s0 * yr_i + c0 * yr_j;
        const Vector a_i = after.col(i);
        const Vector a_j = after.col(j);
        const Vector hp_i = left_h.col(i);
        const Vector hp_j = left_h.col(j);

        Vector hx_i, hx_j, hxr_i, hxr_j;
        if (p.side == Side::Post) {
          hx_i = b.transpose() * u_i;
          hx_j = b.transpose() * u_j;
          hxr_i = b.transpose() * yr_i;
          hxr_j = b.transpose() * yr_j;
        } else {
          hx_i = u_i;
          hx_j = u_j;
          hxr_i = yr_i;
          hxr_j = yr_j;
        }

        const Matrix e0 = h_cur - d - hp_i * hxr_i.transpose() - hp_j * hxr_j.transpose();
        const Matrix uu = hp_i * hx_i.transpose() + hp_j * hx_j.transpose();
        const Matrix vv = hp_j * hx_i.transpose() - hp_i * hx_j.transpose();
        const double k_ee = weighted_sq(e0, p.weights);
        const double k_eu = weighted_dot(e0, uu, p.weights);
        const double k_ev = weighted_dot(e0, vv, p.weights);
        const double k_uu = weighted_sq(uu, p.weights);
        const double k_vv = weighted_sq(vv, p.weights);
        const double k_uv = weighted_dot(uu, vv, p.weights);

        Matrix a_rest, a_u, a_v;
        if (p.penalty_eps) {
          a_rest = adj_cur - a_i * yr_i.transpose() - a_j * yr_j.transpose();
          a_u = a_i * u_i.transpose() + a_j * u_j.transpose();
          a_v = a_j * u_i.transpose() - a_i * u_j.transpose();
        }

        auto g = [&](double theta) {
          const double c = std::cos(theta);
          const double s = std::sin(theta);
          double v = k_ee + 2.0 * c * k_eu + 2.0 * s * k_ev + c * c * k_uu +
                     s * s * k_vv + 2.0 * c * s * k_uv;
          if (p.penalty_eps) {
            double pen = 0.0;
            const double eps = *p.penalty_eps;
            for (Eigen::Index k = 0; k < a_rest.size(); ++k) {
              const double x = a_rest.data()[k] + c * a_u.data()[k] + s * a_v.data()[k];
              pen += x * x / (eps + std::abs(x));
            }
            v += pen;
          }
          return v;
        };

        const double current = g(rot.theta);
        const double candidate = minimize_angle(g);
        if (!(g(candidate) < current)) continue;

        rot.theta = candidate;
        const double c1 = std::cos(candidate);
        const double s1 = std::sin(candidate);
        const Vector ny_i = c1 * u_i - s1 * u_j;
        const Vector ny_j = s1 * u_i + c1 * u_j;
        y.row(i) = ny_i.transpose();
        y.row(j) = ny_j.transpose();
        adj_cur += a_i * (ny_i - yr_i).transpose() + a_j * (ny_j - yr_j).transpose();
        if (p.side == Side::Post) {
          h_cur += hp_i * (b.transpose() * (ny_i - yr_i)).transpose() +
                   hp_j * (b.transpose() * (ny_j - yr_j)).transpose();
        } else {
          h_cur += hp_i * (ny_i - yr_i).transpose() + hp_j * (ny_j - yr_j).transpose();
        }
      }

      before = y;
      if (l + 1 < num_layers) {
        for (const auto& r : schedule.layers[l + 1]) {
          rotate_cols_transposed(after, r.i, r.j, std::cos(r.theta), std::sin(r.theta));
        }
      }
    }

    // Re-evaluate from the schedule to discard accumulated rounding.
    Matrix next_adj = givens_to_matrix(schedule);
    const double next_f = full_objective(p, next_adj);
    result.sweeps = sweep + 1;
    const double improvement = f - next_f;
    if (improvement >= 0.0) {
      adj = std::move(next_adj);
      f = next_f;
      result.trace.push_back(f);
    }
    if (improvement < config.tolerance * (1.0 + f)) {
      result.converged = true;
      break;
    }
  }

  result.schedule = std::move(schedule);
  result.objective = f;
  return result;
}

GivensSchedule randomized(GivensSchedule schedule, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);
  for (auto& layer : schedule.layers) {
    for (auto& r : layer) r.theta = dist(rng);
  }
  return schedule;
}

// Runs every restart and keeps the lowest objective (lowest index on ties).
RunResult multi_start(const Problem& p, const GivensSchedule& skeleton,
                      const DesignConfig& config, int& best_restart) {
  const int runs = std::max(1, config.restarts);
  RunResult best;
  best_restart = -1;
  for (int r = 0; r < runs; ++r) {
    GivensSchedule start = (r == 0) ? skeleton : randomized(skeleton, config.rng_seed, r);
    RunResult run = coordinate_descent(p, std::move(start), config);
    if (best_restart < 0 || run.objective < best.objective) {
      best = std::move(run);
      best_restart = r;
    }
    if (skeleton.layers.empty()) break;
  }
  return best;
}

void require_same_size(const TransformMatrix& base, const TransformMatrix& desired) {
  if (base.size() != desired.size()) {
    throw Error(ErrorCode::Shape, "base and desired transforms differ in size (" +
                                      std::to_string(base.size()) + " vs " +
                                      std::to_string(desired.size()) + ")");
  }
}

}  // namespace

AdjustmentMatrix optimize_adjustment(const TransformMatrix& base,
                                     const TransformMatrix& desired,
                                     const SparsityPattern& pattern, Side side,
                                     const DesignConfig& config) {
  require_same_size(base, desired);
  const int n = base.size();
  if (pattern.size != n) {
    throw Error(ErrorCode::Shape, "pattern size " + std::to_string(pattern.size) +
                                      " does not match transform size " +
                                      std::to_string(n));
  }
  config.validate(n);

  Problem p{&base.entries, &desired.entries, side, row_weights(n, config.alpha_for(n)),
            std::nullopt};
  int best_restart = 0;
  RunResult run = multi_start(p, pattern_schedule_template(pattern), config, best_restart);

  AdjustmentMatrix out;
  out.pattern = pattern;
  out.side = side;
  out.base = base.kind;
  out.target = desired.kind;
  out.realized = givens_to_matrix(run.schedule);
  out.schedule = std::move(run.schedule);
  DesignReport report;
  report.objective = run.objective;
  report.identity_objective = weighted_error(base.entries, desired.entries, config.alpha_for(n));
  report.converged = run.converged;
  report.sweeps = run.sweeps;
  report.best_restart = best_restart;
  report.trace = std::move(run.trace);
  out.report = std::move(report);
  return out;
}

namespace {

double penalty_term(double v, double eps) { return v * v / (eps + std::abs(v)); }

// Multiplicative Givens descent on a dense orthogonal matrix. Pre updates
// X <- X G^T (columns i, j), post updates X <- G X (rows i, j); either way only
// two lines of X and of the composition change per rotation.
struct DenseDescent {
  const Problem& p;
  double eps;
  Matrix x;
  Matrix h;

  DenseDescent(const Problem& problem, double epsilon, Matrix start)
      : p(problem), eps(epsilon), x(std::move(start)), h(compose(problem, x)) {}

  double pair_cost(int i, int j, double c, double s) const {
    const int n = static_cast<int>(x.rows());
    const Matrix& d = *p.desired;
    double f = 0.0;
    if (p.side == Side::Pre) {
      for (int r = 0; r < n; ++r) {
        const double hi = c * h(r, i) - s * h(r, j);
        const double hj = s * h(r, i) + c * h(r, j);
        const double xi = c * x(r, i) - s * x(r, j);
        const double xj = s * x(r, i) + c * x(r, j);
        const double ei = hi - d(r, i);
        const double ej = hj - d(r, j);
        f += p.weights(r) * (ei * ei + ej * ej) + penalty_term(xi, eps) + penalty_term(xj, eps);
      }
    } else {
      for (int col = 0; col < n; ++col) {
        const double hi = c * h(i, col) - s * h(j, col);
        const double hj = s * h(i, col) + c * h(j, col);
        const double xi = c * x(i, col) - s * x(j, col);
        const double xj = s * x(i, col) + c * x(j, col);
        const double ei = hi - d(i, col);
        const double ej = hj - d(j, col);
        f += p.weights(i) * ei * ei + p.weights(j) * ej * ej + penalty_term(xi, eps) +
             penalty_term(xj, eps);
      }
    }
    return f;
  }

  void rotate(int i, int j, double c, double s) {
    if (p.side == Side::Pre) {
      rotate_cols_transposed(x, i, j, c, s);
      rotate_cols_transposed(h, i, j, c, s);
    } else {
      rotate_rows(x, i, j, c, s);
      rotate_rows(h, i, j, c, s);
    }
  }

  double objective() const {
    return weighted_sq(h - *p.desired, p.weights) + sparsity_penalty(x, eps);
  }
};

struct DenseRun {
  Matrix x;
  double objective = 0.0;
  bool converged = false;
};

DenseRun dense_descent(const Problem& p, double eps, Matrix start, const DesignConfig& config) {
  const int n = static_cast<int>(start.rows());
  DenseDescent state(p, eps, std::move(start));
  DenseRun run;
  double f = state.objective();
  for (int sweep = 0; sweep < config.max_iterations; ++sweep) {
    const double before = f;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto g = [&](double t) { return state.pair_cost(i, j, std::cos(t), std::sin(t)); };
        const double theta = minimize_angle(g);
        if (theta != 0.0 && g(theta) < g(0.0)) state.rotate(i, j, std::cos(theta), std::sin(theta));
      }
    }
    f = state.objective();
    if (before - f < config.tolerance * (1.0 + std::abs(f))) {
      run.converged = true;
      break;
    }
  }
  run.x = std::move(state.x);
  run.objective = f;
  return run;
}

}  // namespace

SparsityMap discover_sparsity(const TransformMatrix& base, const TransformMatrix& desired,
                              Side side, const DesignConfig& config) {
  require_same_size(base, desired);
  const int n = base.size();
  config.validate(n);
  Problem p{&base.entries, &desired.entries, side, row_weights(n, config.alpha_for(n)),
            config.sparsity_epsilon};
  const Matrix exact = side == Side::Pre ? Matrix(base.entries.transpose() * desired.entries)
                                         : Matrix(desired.entries * base.entries.transpose());
  const GivensSchedule dense = pattern_schedule_template(SparsityPattern::dense(n));

  // Run 0 starts at the unconstrained solution, run 1 at the identity, later
  // runs at randomly perturbed copies of the unconstrained solution.
  const int runs = std::max(1, config.restarts);
  DenseRun best;
  for (int r = 0; r < runs; ++r) {
    Matrix start = exact;
    if (r == 1) {
      start = Matrix::Identity(n, n);
    } else if (r > 1) {
      start = givens_to_matrix(randomized(dense, config.rng_seed, r)) * exact;
    }
    DenseRun run = dense_descent(p, config.sparsity_epsilon, std::move(start), config);
    if (r == 0 || run.objective < best.objective) best = std::move(run);
  }

  SparsityMap out;
  out.realized = std::move(best.x);
  const double peak = out.realized.cwiseAbs().maxCoeff();
  out.magnitude = out.realized.cwiseAbs() / peak;
  out.objective = best.objective;
  out.converged = best.converged;
  return out;
}

AdjustmentMatrix dct8_adjustment_from_dst7(const AdjustmentMatrix& dst7) {
  if (dst7.side != Side::Post || dst7.base != TransformKind::DCT2 ||
      dst7.target != TransformKind::DST7) {
    throw Error(ErrorCode::KindMismatch,
                "expected a post-side dct2 -> dst7 adjustment, got " +
                    std::string(to_string(dst7.side)) + " " +
                    std::string(to_string(dst7.base)) + " -> " +
                    std::string(to_string(dst7.target)));
  }
  AdjustmentMatrix out = dst7;
  out.target = TransformKind::DCT8;
  out.realized = alternate_col_signs(alternate_row_signs(dst7.realized));
  for (auto& layer : out.schedule.layers) {
    for (auto& r : layer) {
      if ((r.i + r.j) % 2 != 0) r.theta = -r.theta;
    }
  }
  if (out.report) {
    // Same weighted error as the source design; the schedule-independent
    // fields carry over.
    out.report->trace.clear();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization and checks

std::string format_adjustment(const AdjustmentMatrix& adjustment) {
  std::ostringstream os;
  os << adjustment.pattern.to_string() << ' ' << to_string(adjustment.side) << ' '
     << to_string(adjustment.base) << ' ' << to_string(adjustment.target) << ' '
     << adjustment.size() << '\n';
  for (std::size_t l = 0; l < adjustment.schedule.layers.size(); ++l) {
    for (const auto& r : adjustment.schedule.layers[l]) {
      os << l << ' ' << r.i << ' ' << r.j << ' ' << format_double(r.theta) << '\n';
    }
  }
  write_matrix(os, adjustment.realized);
  return os.str();
}

AdjustmentMatrix parse_adjustment(std::string_view text) {
  std::size_t pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(pos, end - pos);
      pos = end + 1;
      if (!split_tokens(line).empty()) return line;
    }
    return std::nullopt;
  };

  auto header_line = next_line();
  if (!header_line) throw Error(ErrorCode::Parse, "empty adjustment file");
  auto header = split_tokens(*header_line);
  if (header.size() != 5) {
    throw Error(ErrorCode::Parse, "adjustment header must be '<pattern> <side> <base> <target> <N>'");
  }
  const auto n = parse_integer(header[4]);
  if (n < 1 || n > 4096) throw Error(ErrorCode::Parse, "adjustment size out of range");
  AdjustmentMatrix out;
  out.pattern = parse_pattern(header[0], static_cast<int>(n));
  auto side = parse_side(header[1]);
  auto base = parse_transform_kind(header[2]);
  auto target = parse_transform_kind(header[3]);
  if (!side || !base || !target) {
    throw Error(ErrorCode::Parse, "bad side or transform kind in adjustment header");
  }
  out.side = *side;
  out.base = *base;
  out.target = *target;
  out.schedule.size = static_cast<int>(n);

  std::size_t matrix_start = text.size();
  while (true) {
    const std::size_t line_start = pos;
    auto line = next_line();
    if (!line) throw Error(ErrorCode::Parse, "adjustment file has no realized matrix");
    auto tokens = split_tokens(*line);
    if (tokens.size() == 2) {
      matrix_start = line_start;
      break;
    }
    if (tokens.size() != 4) {
      throw Error(ErrorCode::Parse, "rotation line must be '<layer> <i> <j> <theta>'");
    }
    const auto layer = parse_integer(tokens[0]);
    if (layer < 0 || layer > 1 << 20) throw Error(ErrorCode::Parse, "bad layer index");
    if (layer + 1 < static_cast<long long>(out.schedule.layers.size())) {
      throw Error(ErrorCode::Parse, "rotation layers must be non-decreasing");
    }
    out.schedule.layers.resize(std::max<std::size_t>(out.schedule.layers.size(),
                                                     static_cast<std::size_t>(layer + 1)));
    out.schedule.layers[layer].push_back({static_cast<int>(parse_integer(tokens[1])),
                                          static_cast<int>(parse_integer(tokens[2])),
                                          parse_double(tokens[3])});
  }
  validate_schedule(out.schedule);
  out.realized = parse_matrix(text.substr(matrix_start));
  if (out.realized.rows() != n || out.realized.cols() != n) {
    throw Error(ErrorCode::Parse, "realized matrix must be " + std::to_string(n) + "x" +
                                      std::to_string(n));
  }
  return out;
}

AdjustmentCheck check_adjustment(const AdjustmentMatrix& adjustment) {
  AdjustmentCheck check;
  const int n = adjustment.size();
  check.orthogonality = orthogonality_error(adjustment.realized);
  check.schedule_mismatch = max_abs_diff(adjustment.realized, givens_to_matrix(adjustment.schedule));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adjustment.pattern.allows(i, j)) continue;
      const double expected = (i == j) ? 1.0 : 0.0;
      check.pattern_violation =
          std::max(check.pattern_violation, std::abs(adjustment.realized(i, j) - expected));
    }
  }
  return check;
}

}  // namespace tadj
