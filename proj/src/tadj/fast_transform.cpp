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

#include "tadj/fast_transform.hpp"

#include "tadj/error.hpp"
#include "tadj/fast_dct_kernels.hpp"

#include <algorithm>
#include <cstring>

namespace tadj {

bool fast_size_supported(int n) noexcept {
  return n == 4 || n == 8 || n == 16 || n == 32 || n == 64;
}

namespace {

void require_fast_size(int n) {
  if (!fast_size_supported(n)) {
    throw Error(ErrorCode::InvalidDimension,
                "fast transforms support N in {4, 8, 16, 32, 64}, got " + std::to_string(n));
  }
}

void require_span_sizes(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) {
    throw Error(ErrorCode::Shape, "input and output lengths differ");
  }
  require_fast_size(static_cast<int>(in.size()));
}

void dct2_dispatch(int n, const double* in, double* out) {
  switch (n) {
    case 4: kernels::dct2<double, 4>(in, out); return;
    case 8: kernels::dct2<double, 8>(in, out); return;
    case 16: kernels::dct2<double, 16>(in, out); return;
    case 32: kernels::dct2<double, 32>(in, out); return;
    case 64: kernels::dct2<double, 64>(in, out); return;
    default: require_fast_size(n);
  }
}

void idct2_dispatch(int n, const double* in, double* out) {
  switch (n) {
    case 4: kernels::idct2<double, 4>(in, out); return;
    case 8: kernels::idct2<double, 8>(in, out); return;
    case 16: kernels::idct2<double, 16>(in, out); return;
    case 32: kernels::idct2<double, 32>(in, out); return;
    case 64: kernels::idct2<double, 64>(in, out); return;
    default: require_fast_size(n);
  }
}

// out = S C2^T R in
void dst3_dispatch(int n, const double* in, double* out) {
  double rev[64] = {};
  for (int i = 0; i < n; ++i) rev[i] = in[n - 1 - i];
  idct2_dispatch(n, rev, out);
  for (int i = 1; i < n; i += 2) out[i] = -out[i];
}

// out = R C2 S in
void dst2_dispatch(int n, const double* in, double* out) {
  double signed_in[64] = {};
  double tmp[64];
  for (int i = 0; i < n; ++i) signed_in[i] = (i % 2 == 0) ? in[i] : -in[i];
  dct2_dispatch(n, signed_in, tmp);
  for (int i = 0; i < n; ++i) out[i] = tmp[n - 1 - i];
}

std::int64_t lee_mults(int n) { return n == 4 ? 5 : n / 2 + 2 * lee_mults(n / 2); }
std::int64_t lee_adds(int n) { return n == 4 ? 8 : n + (n / 2 - 1) + 2 * lee_adds(n / 2); }

}  // namespace

void fast_dct2(std::span<const double> in, std::span<double> out) {
  require_span_sizes(in, out);
  dct2_dispatch(static_cast<int>(in.size()), in.data(), out.data());
}

void fast_idct2(std::span<const double> in, std::span<double> out) {
  require_span_sizes(in, out);
  idct2_dispatch(static_cast<int>(in.size()), in.data(), out.data());
}

void fast_dst3_via_dct2(std::span<const double> in, std::span<double> out) {
  require_span_sizes(in, out);
  dst3_dispatch(static_cast<int>(in.size()), in.data(), out.data());
}

void fast_dst2_via_dct2(std::span<const double> in, std::span<double> out) {
  require_span_sizes(in, out);
  dst2_dispatch(static_cast<int>(in.size()), in.data(), out.data());
}

Vector fast_dct2(const Vector& x) {
  Vector y(x.size());
  fast_dct2(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  return y;
}

Vector fast_dst3_via_dct2(const Vector& x) {
  Vector y(x.size());
  fast_dst3_via_dct2(std::span<const double>(x.data(), x.size()),
                     std::span<double>(y.data(), y.size()));
  return y;
}

OperationCount fast_dct2_count(int n) {
  require_fast_size(n);
  // Lee flow graph plus one scaling multiplication per output.
  return {lee_mults(n) + n, lee_adds(n), n};
}

std::string_view to_string(BasePath path) noexcept {
  switch (path) {
    case BasePath::FastDCT2: return "fast-dct2";
    case BasePath::FastDCT3: return "fast-dct3";
    case BasePath::FastDST2ViaDCT2: return "fast-dst2-via-dct2";
    case BasePath::FastDST3ViaDCT2: return "fast-dst3-via-dct2";
  }
  return "?";
}

BasePath base_path_for(TransformKind kind) {
  switch (kind) {
    case TransformKind::DCT2: return BasePath::FastDCT2;
    case TransformKind::DCT3: return BasePath::FastDCT3;
    case TransformKind::DST2: return BasePath::FastDST2ViaDCT2;
    case TransformKind::DST3: return BasePath::FastDST3ViaDCT2;
    default: break;
  }
  throw Error(ErrorCode::KindMismatch,
              "no fast path for base transform " + std::string(to_string(kind)));
}

// ---------------------------------------------------------------------------
// Adjustment stages

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> structural_support(
    const GivensSchedule& schedule) {
  const int n = schedule.size;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask(n, n);
  mask.setConstant(false);
  for (int i = 0; i < n; ++i) mask(i, i) = true;
  for (const auto& layer : schedule.layers) {
    for (const auto& r : layer) {
      for (int k = 0; k < n; ++k) {
        const bool either = mask(r.i, k) || mask(r.j, k);
        mask(r.i, k) = either;
        mask(r.j, k) = either;
      }
    }
  }
  return mask;
}

BandOperator::BandOperator(const Matrix& m,
                           const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& support)
    : n_(static_cast<int>(m.rows())) {
  start_.resize(n_);
  length_.resize(n_);
  offset_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    int lo = n_;
    int hi = -1;
    for (int j = 0; j < n_; ++j) {
      if (support(i, j)) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
      }
    }
    start_[i] = lo;
    length_[i] = hi - lo + 1;
    offset_[i] = static_cast<int>(coef_.size());
    for (int j = lo; j <= hi; ++j) coef_.push_back(m(i, j));
  }
}

void BandOperator::apply(const double* in, double* out) const {
  for (int i = 0; i < n_; ++i) {
    const double* c = coef_.data() + offset_[i];
    const double* x = in + start_[i];
    double acc = c[0] * x[0];
    for (int k = 1; k < length_[i]; ++k) acc += c[k] * x[k];
    out[i] = acc;
  }
}

OperationCount BandOperator::cost() const noexcept {
  OperationCount count{0, 0, n_};
  for (int i = 0; i < n_; ++i) {
    // A row that is a lone unit diagonal entry costs nothing.
    if (length_[i] == 1 && coef_[offset_[i]] == 1.0) continue;
    count.multiplications += length_[i];
    count.additions += length_[i] - 1;
  }
  return count;
}

int BandOperator::max_row_length() const noexcept {
  return length_.empty() ? 0 : *std::max_element(length_.begin(), length_.end());
}

namespace {

void require_pattern(const AdjustmentMatrix& adjustment, PatternVariant variant,
                     const char* what) {
  if (adjustment.pattern.variant != variant) {
    throw Error(ErrorCode::Pattern, std::string(what) + " needs a " +
                                        (variant == PatternVariant::Band ? "band" : "sub-block") +
                                        " adjustment, got " + adjustment.pattern.to_string());
  }
}

void require_length(const AdjustmentMatrix& adjustment, const Vector& x) {
  if (x.size() != adjustment.size()) {
    throw Error(ErrorCode::Shape, "vector length " + std::to_string(x.size()) +
                                      " does not match adjustment size " +
                                      std::to_string(adjustment.size()));
  }
}

std::vector<double> row_major(const Matrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
  return out;
}

void dense_apply(const std::vector<double>& rm, int n, const double* in, double* out) {
  for (int i = 0; i < n; ++i) {
    const double* row = rm.data() + static_cast<std::size_t>(i) * n;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * in[j];
    out[i] = acc;
  }
}

}  // namespace

Vector apply_band(const AdjustmentMatrix& adjustment, const Vector& x) {
  require_pattern(adjustment, PatternVariant::Band, "apply_band");
  require_length(adjustment, x);
  BandOperator op(adjustment.realized, structural_support(adjustment.schedule));
  Vector y(x.size());
  op.apply(x.data(), y.data());
  return y;
}

Vector apply_subblock(const AdjustmentMatrix& adjustment, const Vector& y) {
  require_pattern(adjustment, PatternVariant::SubBlock, "apply_subblock");
  require_length(adjustment, y);
  const int b = adjustment.pattern.parameter;
  Vector out = y;
  out.head(b) = adjustment.realized.topLeftCorner(b, b) * y.head(b);
  return out;
}

// ---------------------------------------------------------------------------
// AdjustedTransform

AdjustedTransform::AdjustedTransform(AdjustmentMatrix adjustment)
    : adjustment_(std::move(adjustment)), n_(adjustment_.size()) {
  require_fast_size(n_);
  base_path_ = base_path_for(adjustment_.base);
  if (adjustment_.pattern.size != n_ || adjustment_.schedule.size != n_) {
    throw Error(ErrorCode::Shape, "adjustment pattern/schedule size mismatch");
  }
  const auto check = check_adjustment(adjustment_);
  if (check.schedule_mismatch > 1e-9 || check.pattern_violation > 1e-9) {
    throw Error(ErrorCode::InvalidSchedule,
                "realized adjustment does not match its schedule and pattern");
  }

  OperationCount stage{0, 0, n_};
  switch (adjustment_.pattern.variant) {
    case PatternVariant::Band: {
      stage_ = Stage::Band;
      const auto support = structural_support(adjustment_.schedule);
      band_ = BandOperator(adjustment_.realized, support);
      band_t_ = BandOperator(adjustment_.realized.transpose(), support.transpose());
      stage = band_.cost();
      break;
    }
    case PatternVariant::SubBlock: {
      stage_ = Stage::SubBlock;
      block_ = adjustment_.pattern.parameter;
      const Matrix block = adjustment_.realized.topLeftCorner(block_, block_);
      block_rm_ = row_major(block);
      block_t_rm_ = row_major(block.transpose());
      if (block_ > 1) {
        stage.multiplications = static_cast<std::int64_t>(block_) * block_;
        stage.additions = static_cast<std::int64_t>(block_) * (block_ - 1);
      }
      break;
    }
    case PatternVariant::Dense: {
      stage_ = Stage::Dense;
      dense_rm_ = row_major(adjustment_.realized);
      dense_t_rm_ = row_major(adjustment_.realized.transpose());
      stage.multiplications = static_cast<std::int64_t>(n_) * n_;
      stage.additions = static_cast<std::int64_t>(n_) * (n_ - 1);
      break;
    }
  }
  op_profile_ = fast_dct2_count(n_);
  op_profile_ += stage;
}

void AdjustedTransform::apply_stage(const double* in, double* out, bool transposed) const {
  switch (stage_) {
    case Stage::Band:
      (transposed ? band_t_ : band_).apply(in, out);
      return;
    case Stage::SubBlock: {
      const auto& rm = transposed ? block_t_rm_ : block_rm_;
      dense_apply(rm, block_, in, out);
      std::memcpy(out + block_, in + block_, sizeof(double) * (n_ - block_));
      return;
    }
    case Stage::Dense:
      dense_apply(transposed ? dense_t_rm_ : dense_rm_, n_, in, out);
      return;
  }
}

void AdjustedTransform::base_forward(const double* in, double* out) const {
  switch (base_path_) {
    case BasePath::FastDCT2: dct2_dispatch(n_, in, out); return;
    case BasePath::FastDCT3: idct2_dispatch(n_, in, out); return;
    case BasePath::FastDST2ViaDCT2: dst2_dispatch(n_, in, out); return;
    case BasePath::FastDST3ViaDCT2: dst3_dispatch(n_, in, out); return;
  }
}

void AdjustedTransform::base_inverse(const double* in, double* out) const {
  switch (base_path_) {
    case BasePath::FastDCT2: idct2_dispatch(n_, in, out); return;
    case BasePath::FastDCT3: dct2_dispatch(n_, in, out); return;
    case BasePath::FastDST2ViaDCT2: dst3_dispatch(n_, in, out); return;
    case BasePath::FastDST3ViaDCT2: dst2_dispatch(n_, in, out); return;
  }
}

void AdjustedTransform::forward(const double* in, double* out) const {
  double tmp[64];
  if (adjustment_.side == Side::Pre) {
    apply_stage(in, tmp, false);
    base_forward(tmp, out);
  } else {
    base_forward(in, tmp);
    apply_stage(tmp, out, false);
  }
}

void AdjustedTransform::inverse(const double* in, double* out) const {
  double tmp[64];
  if (adjustment_.side == Side::Pre) {
    base_inverse(in, tmp);
    apply_stage(tmp, out, true);
  } else {
    apply_stage(in, tmp, true);
    base_inverse(tmp, out);
  }
}

Vector AdjustedTransform::forward(const Vector& x) const {
  require_length(adjustment_, x);
  Vector y(n_);
  forward(x.data(), y.data());
  return y;
}

Vector AdjustedTransform::inverse(const Vector& y) const {
  require_length(adjustment_, y);
  Vector x(n_);
  inverse(y.data(), x.data());
  return x;
}

Matrix AdjustedTransform::dense() const {
  const auto base = build_transform(adjustment_.base, n_);
  const Matrix id = Matrix::Identity(n_, n_);
  return adjustment_.side == Side::Pre ? compose_pipeline(id, base, adjustment_.realized)
                                       : compose_pipeline(adjustment_.realized, base, id);
}

// ---------------------------------------------------------------------------
// Dense and plain fast transforms

DenseTransform::DenseTransform(const Matrix& m) : n_(static_cast<int>(m.rows())) {
  if (m.rows() != m.cols() || n_ < 1 || n_ > 64) {
    throw Error(ErrorCode::Shape, "dense transform must be square with N <= 64");
  }
  rm_ = row_major(m);
  t_rm_ = row_major(m.transpose());
}

void DenseTransform::forward(const double* in, double* out) const { dense_apply(rm_, n_, in, out); }

void DenseTransform::inverse(const double* in, double* out) const {
  dense_apply(t_rm_, n_, in, out);
}

FastDct2Transform::FastDct2Transform(int n) : n_(n) { require_fast_size(n); }

void FastDct2Transform::forward(const double* in, double* out) const { dct2_dispatch(n_, in, out); }

void FastDct2Transform::inverse(const double* in, double* out) const {
  idct2_dispatch(n_, in, out);
}

namespace {

std::vector<double> to_row_major(const Matrix& m) { return row_major(m); }

Matrix from_row_major(const std::vector<double>& v, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = v[static_cast<std::size_t>(i) * cols + j];
  }
  return m;
}

void require_block(const Matrix& block, int width, int height) {
  if (block.cols() != width || block.rows() != height) {
    throw Error(ErrorCode::Shape, "block must be " + std::to_string(height) + "x" +
                                      std::to_string(width) + ", got " +
                                      std::to_string(block.rows()) + "x" +
                                      std::to_string(block.cols()));
  }
}

}  // namespace

Matrix forward_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical,
                  const Matrix& block) {
  require_block(block, horizontal.size(), vertical.size());
  const auto in = to_row_major(block);
  std::vector<double> out(in.size());
  forward_2d(horizontal, vertical, in.data(), out.data());
  return from_row_major(out, vertical.size(), horizontal.size());
}

Matrix inverse_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical,
                  const Matrix& coefficients) {
  require_block(coefficients, horizontal.size(), vertical.size());
  const auto in = to_row_major(coefficients);
  std::vector<double> out(in.size());
  inverse_2d(horizontal, vertical, in.data(), out.data());
  return from_row_major(out, vertical.size(), horizontal.size());
}

// ---------------------------------------------------------------------------
// Simultaneous encoder evaluation

SimultaneousEncoder::SplitBlock SimultaneousEncoder::split(const AdjustmentMatrix& adjustment) {
  if (adjustment.pattern.variant != PatternVariant::SubBlock || adjustment.side != Side::Post ||
      adjustment.base != TransformKind::DCT2 || adjustment.target != TransformKind::DST7) {
    throw Error(ErrorCode::Configuration,
                "simultaneous evaluation needs post-side dct2 -> dst7 sub-block adjustments");
  }
  SplitBlock out;
  out.order = adjustment.pattern.parameter;
  out.even = row_major(adjustment.realized.topLeftCorner(out.order, out.order));
  return out;
}

// e[i] = sum over j with i+j even, o[i] = sum over j with i+j odd.
void SimultaneousEncoder::split_apply(const SplitBlock& block, const double* z,
                                      std::size_t stride, double* e, double* o) {
  const int b = block.order;
  for (int i = 0; i < b; ++i) {
    const double* row = block.even.data() + static_cast<std::size_t>(i) * b;
    double se = 0.0;
    double so = 0.0;
    for (int j = i & 1; j < b; j += 2) se += row[j] * z[j * stride];
    for (int j = (i & 1) ^ 1; j < b; j += 2) so += row[j] * z[j * stride];
    e[i] = se;
    o[i] = so;
  }
}

SimultaneousEncoder::SimultaneousEncoder(const EncoderContext& context) {
  if (!context.horizontal || !context.vertical) {
    throw Error(ErrorCode::Configuration,
                std::string("missing sub-block adjustment for the ") +
                    (!context.horizontal ? "horizontal" : "vertical") + " dimension");
  }
  horizontal_ = split(*context.horizontal);
  vertical_ = split(*context.vertical);
  w_ = context.horizontal->size();
  h_ = context.vertical->size();
  require_fast_size(w_);
  require_fast_size(h_);
}

void SimultaneousEncoder::evaluate(const double* in, double* dct2,
                                   std::array<double*, 4> combos) const {
  const int w = w_;
  const int h = h_;
  const std::size_t total = static_cast<std::size_t>(w) * h;
  forward_2d(FastDct2Transform(w), FastDct2Transform(h), in, dct2);
  for (double* c : combos) std::memcpy(c, dct2, sizeof(double) * total);

  const int bw = horizontal_.order;
  const int bv = vertical_.order;
  double e[64];
  double o[64];

  // Rows: combos[0*2+v] gets DST-7, combos[1*2+v] gets DCT-8 horizontally.
  for (int r = 0; r < h; ++r) {
    const double* z = dct2 + static_cast<std::size_t>(r) * w;
    split_apply(horizontal_, z, 1, e, o);
    for (int i = 0; i < bw; ++i) {
      const double s7 = e[i] + o[i];
      const double s8 = e[i] - o[i];
      const std::size_t at = static_cast<std::size_t>(r) * w + i;
      combos[0][at] = s7;
      combos[1][at] = s7;
      combos[2][at] = s8;
      combos[3][at] = s8;
    }
  }

  // Columns past the horizontally adjusted region are the same for both
  // horizontal choices.
  for (int c = bw; c < w; ++c) {
    split_apply(vertical_, dct2 + c, static_cast<std::size_t>(w), e, o);
    for (int i = 0; i < bv; ++i) {
      const double s7 = e[i] + o[i];
      const double s8 = e[i] - o[i];
      const std::size_t at = static_cast<std::size_t>(i) * w + c;
      combos[0][at] = s7;
      combos[2][at] = s7;
      combos[1][at] = s8;
      combos[3][at] = s8;
    }
  }
  double col[64];
  for (int c = 0; c < bw; ++c) {
    for (int hk = 0; hk < 2; ++hk) {
      double* dst7_col = combos[hk * 2 + 0];
      double* dct8_col = combos[hk * 2 + 1];
      for (int i = 0; i < bv; ++i) col[i] = dst7_col[static_cast<std::size_t>(i) * w + c];
      split_apply(vertical_, col, 1, e, o);
      for (int i = 0; i < bv; ++i) {
        const std::size_t at = static_cast<std::size_t>(i) * w + c;
        dst7_col[at] = e[i] + o[i];
        dct8_col[at] = e[i] - o[i];
      }
    }
  }
}

EncoderOutputs SimultaneousEncoder::evaluate(const Matrix& block) const {
  require_block(block, w_, h_);
  const auto in = to_row_major(block);
  const std::size_t total = in.size();
  std::vector<double> dct2(total);
  std::array<std::vector<double>, 4> combos;
  for (auto& c : combos) c.resize(total);
  evaluate(in.data(), dct2.data(),
           {combos[0].data(), combos[1].data(), combos[2].data(), combos[3].data()});
  EncoderOutputs out;
  out.dct2 = from_row_major(dct2, h_, w_);
  for (int hk = 0; hk < 2; ++hk) {
    for (int vk = 0; vk < 2; ++vk) out.combos[hk][vk] = from_row_major(combos[hk * 2 + vk], h_, w_);
  }
  return out;
}

namespace {

OperationCount split_cost(int b) {
  OperationCount count{0, 0, b};
  for (int i = 0; i < b; ++i) {
    const int ne = (b - (i & 1) + 1) / 2;
    const int no = b - ne;
    count.multiplications += b;
    count.additions += std::max(ne - 1, 0) + std::max(no - 1, 0) + ((ne > 0 && no > 0) ? 2 : 0);
  }
  return count;
}

}  // namespace

OperationCount SimultaneousEncoder::cost() const {
  OperationCount total{0, 0, static_cast<std::int64_t>(w_) * h_};
  const auto fw = fast_dct2_count(w_);
  const auto fh = fast_dct2_count(h_);
  total.multiplications += h_ * fw.multiplications + w_ * fh.multiplications;
  total.additions += h_ * fw.additions + w_ * fh.additions;
  const auto sh = split_cost(horizontal_.order);
  const auto sv = split_cost(vertical_.order);
  total.multiplications += h_ * sh.multiplications;
  total.additions += h_ * sh.additions;
  const std::int64_t vertical_vectors = (w_ - horizontal_.order) + 2 * horizontal_.order;
  total.multiplications += vertical_vectors * sv.multiplications;
  total.additions += vertical_vectors * sv.additions;
  return total;
}

EncoderOutputs simultaneous_encoder_eval(const Matrix& block, const EncoderContext& context) {
  return SimultaneousEncoder(context).evaluate(block);
}

// ---------------------------------------------------------------------------
// Operation counts

OperationCount dense_count_1d(int n) {
  return {static_cast<std::int64_t>(n) * n, static_cast<std::int64_t>(n) * (n - 1), n};
}

OperationCount dense_count_2d(int width, int height) {
  const std::int64_t w = width;
  const std::int64_t h = height;
  return {h * w * w + w * h * h, h * w * (w - 1) + w * h * (h - 1), w * h};
}

OperationCount op_count(const AdjustedTransform& transform) { return transform.op_profile(); }

OperationCount op_count_2d(const AdjustedTransform& horizontal, const AdjustedTransform& vertical) {
  const std::int64_t w = horizontal.size();
  const std::int64_t h = vertical.size();
  const auto& ph = horizontal.op_profile();
  const auto& pv = vertical.op_profile();
  return {h * ph.multiplications + w * pv.multiplications,
          h * ph.additions + w * pv.additions, w * h};
}

}  // namespace tadj
