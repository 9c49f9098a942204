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

#include "tadj/adjustment_design.hpp"
#include "tadj/transform_matrices.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tadj {

/// Arithmetic cost of a transform. Multiplications by 0 or +-1, permutations
/// and sign changes are free; additions and subtractions count together.
struct OperationCount {
  std::int64_t multiplications = 0;
  std::int64_t additions = 0;
  std::int64_t coefficients = 1;  // N for 1-D, W*H for 2-D

  double per_coefficient_mults() const noexcept {
    return static_cast<double>(multiplications) / static_cast<double>(coefficients);
  }
  double per_coefficient_adds() const noexcept {
    return static_cast<double>(additions) / static_cast<double>(coefficients);
  }
  OperationCount& operator+=(const OperationCount& other) noexcept {
    multiplications += other.multiplications;
    additions += other.additions;
    return *this;
  }
};

/// True for the sizes the fast kernels are instantiated for: 4, 8, 16, 32, 64.
bool fast_size_supported(int n) noexcept;

// Fast base transforms on contiguous length-N arrays. `in` and `out` must not
// alias. Unsupported sizes throw Error(InvalidDimension).
void fast_dct2(std::span<const double> in, std::span<double> out);
void fast_idct2(std::span<const double> in, std::span<double> out);
/// DST-3 = S C2^T R: reversal, fast inverse DCT-2, alternating signs.
void fast_dst3_via_dct2(std::span<const double> in, std::span<double> out);
/// DST-2 = R C2 S: alternating signs, fast DCT-2, reversal.
void fast_dst2_via_dct2(std::span<const double> in, std::span<double> out);

Vector fast_dct2(const Vector& x);
Vector fast_dst3_via_dct2(const Vector& x);

/// Cost of one fast orthonormal N-point DCT-2 (or its inverse; the flow graphs
/// are transposes of each other and cost the same).
OperationCount fast_dct2_count(int n);

enum class BasePath { FastDCT2, FastDCT3, FastDST2ViaDCT2, FastDST3ViaDCT2 };

std::string_view to_string(BasePath path) noexcept;
/// Throws Error(KindMismatch) for kinds without a fast path (DST-7, DCT-8).
BasePath base_path_for(TransformKind kind);

/// Band matrix stored row-wise as one contiguous run of coefficients per row.
/// Row support comes from the rotation structure, not from thresholding.
class BandOperator {
public:
  BandOperator() = default;
  /// `support(i, j)` true where the entry is structurally non-zero.
  BandOperator(const Matrix& m, const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& support);

  int size() const noexcept { return n_; }
  void apply(const double* in, double* out) const;
  OperationCount cost() const noexcept;
  int max_row_length() const noexcept;

private:
  int n_ = 0;
  std::vector<int> start_;
  std::vector<int> length_;
  std::vector<int> offset_;
  std::vector<double> coef_;
};

/// Structural non-zero mask of the matrix realized by a schedule.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> structural_support(
    const GivensSchedule& schedule);

/// realized * x for a Band adjustment, in O(K N). Throws Error(Pattern) for
/// other patterns.
Vector apply_band(const AdjustmentMatrix& adjustment, const Vector& x);
/// realized * y for a SubBlock adjustment: only y[0..B) changes. Throws
/// Error(Pattern) for other patterns.
Vector apply_subblock(const AdjustmentMatrix& adjustment, const Vector& y);

/// Adjustment + fast base transform, executable in both directions.
///   Pre:  forward y = Base (A x),      inverse x = A^T (Base^T y)
///   Post: forward y = C (Base x),      inverse x = Base^T (C^T y)
class AdjustedTransform {
public:
  explicit AdjustedTransform(AdjustmentMatrix adjustment);

  TransformKind target() const noexcept { return adjustment_.target; }
  int size() const noexcept { return n_; }
  const AdjustmentMatrix& adjustment() const noexcept { return adjustment_; }
  BasePath base_path() const noexcept { return base_path_; }
  const OperationCount& op_profile() const noexcept { return op_profile_; }

  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;
  Vector forward(const Vector& x) const;
  Vector inverse(const Vector& y) const;

  /// Dense H from compose_pipeline, the oracle for both directions.
  Matrix dense() const;

private:
  enum class Stage { Band, SubBlock, Dense };

  void apply_stage(const double* in, double* out, bool transposed) const;
  void base_forward(const double* in, double* out) const;
  void base_inverse(const double* in, double* out) const;

  AdjustmentMatrix adjustment_;
  int n_ = 0;
  BasePath base_path_ = BasePath::FastDCT2;
  Stage stage_ = Stage::Dense;
  BandOperator band_;
  BandOperator band_t_;
  int block_ = 0;
  std::vector<double> block_rm_;    // top-left block, row-major
  std::vector<double> block_t_rm_;  // its transpose, row-major
  std::vector<double> dense_rm_;
  std::vector<double> dense_t_rm_;
  OperationCount op_profile_;
};

/// Dense matrix-vector transform, the baseline fast paths are compared with.
class DenseTransform {
public:
  explicit DenseTransform(const Matrix& m);

  int size() const noexcept { return n_; }
  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;

private:
  int n_ = 0;
  std::vector<double> rm_;
  std::vector<double> t_rm_;
};

/// Fast orthonormal DCT-2 wrapped in the same interface as the others.
class FastDct2Transform {
public:
  explicit FastDct2Transform(int n);
  int size() const noexcept { return n_; }
  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;

private:
  int n_ = 0;
};

/// Separable 2-D transform of a row-major H x W block: every row (length W)
/// goes through `horizontal`, then every column (length H) through `vertical`.
/// Coefficients: Y = V X H^T.
template <typename Horizontal, typename Vertical>
void forward_2d(const Horizontal& horizontal, const Vertical& vertical, const double* in,
                double* out) {
  const int w = horizontal.size();
  const int h = vertical.size();
  double buf_in[64];
  double buf_out[64];
  for (int r = 0; r < h; ++r) horizontal.forward(in + r * w, out + r * w);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) buf_in[r] = out[r * w + c];
    vertical.forward(buf_in, buf_out);
    for (int r = 0; r < h; ++r) out[r * w + c] = buf_out[r];
  }
}

/// Inverse of forward_2d: columns first, then rows.
template <typename Horizontal, typename Vertical>
void inverse_2d(const Horizontal& horizontal, const Vertical& vertical, const double* in,
                double* out) {
  const int w = horizontal.size();
  const int h = vertical.size();
  double buf_in[64];
  double buf_out[64];
  double tmp[64 * 64];
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) buf_in[r] = in[r * w + c];
    vertical.inverse(buf_in, buf_out);
    for (int r = 0; r < h; ++r) tmp[r * w + c] = buf_out[r];
  }
  for (int r = 0; r < h; ++r) horizontal.inverse(tmp + r * w, out + r * w);
}

Matrix forward_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical,
                  const Matrix& block);
Matrix inverse_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical,
                  const Matrix& coefficients);

/// Post-side DCT-2 -> DST-7 sub-block adjustments for both block dimensions.
struct EncoderContext {
  std::optional<AdjustmentMatrix> horizontal;  // size W
  std::optional<AdjustmentMatrix> vertical;    // size H
};

enum class TrigKind { DST7 = 0, DCT8 = 1 };

/// The five coefficient blocks an encoder compares.
struct EncoderOutputs {
  Matrix dct2;
  // combos[h][v]: horizontal transform h, vertical transform v.
  std::array<std::array<Matrix, 2>, 2> combos;

  const Matrix& combo(TrigKind horizontal, TrigKind vertical) const {
    return combos[static_cast<int>(horizontal)][static_cast<int>(vertical)];
  }
};

/// Shares one 2-D DCT-2 across all five outputs and derives every DST-7/DCT-8
/// combination by adjusting only the first B rows and columns. DST-7 and DCT-8
/// adjustments of a vector come from one set of products: the block splits
/// into its i+j even and i+j odd entries, e = C_even z and o = C_odd z, and
/// then C7 z = e + o, C8 z = e - o.
class SimultaneousEncoder {
public:
  explicit SimultaneousEncoder(const EncoderContext& context);

  int width() const noexcept { return w_; }
  int height() const noexcept { return h_; }

  /// `in` is row-major H x W. `dct2` and each `combos[h*2+v]` receive row-major
  /// H x W blocks.
  void evaluate(const double* in, double* dct2, std::array<double*, 4> combos) const;
  EncoderOutputs evaluate(const Matrix& block) const;

  /// Cost of producing all five blocks.
  OperationCount cost() const;

private:
  struct SplitBlock {
    int order = 0;
    std::vector<double> even;  // row-major, entries with i+j odd zeroed
    std::vector<double> odd;   // row-major, entries with i+j even zeroed
  };

  static SplitBlock split(const AdjustmentMatrix& adjustment);
  static void split_apply(const SplitBlock& block, const double* z, std::size_t stride,
                          double* e, double* o);

  int w_ = 0;
  int h_ = 0;
  SplitBlock horizontal_;
  SplitBlock vertical_;
};

EncoderOutputs simultaneous_encoder_eval(const Matrix& block, const EncoderContext& context);

// Analytic operation counts under the convention documented on OperationCount.
OperationCount dense_count_1d(int n);
OperationCount dense_count_2d(int width, int height);
OperationCount op_count(const AdjustedTransform& transform);
OperationCount op_count_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical);

}  // namespace tadj
