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

#include "tadj/figures.hpp"

#include "tadj/error.hpp"
#include "tadj/fast_transform.hpp"
#include "tadj/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tadj {

std::string encode_pgm(const std::vector<std::uint8_t>& levels, int width, int height) {
  if (width < 1 || height < 1 ||
      levels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::Shape, "PGM pixel count does not match its dimensions");
  }
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(levels.begin(), levels.end());
  return out;
}

namespace {

std::uint8_t gray_level(double magnitude) {
  const double m = std::clamp(magnitude, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - m)));
}

}  // namespace

std::string magnitude_pgm(const Matrix& magnitude, int scale) {
  if (scale < 1) throw Error(ErrorCode::Configuration, "PGM scale must be >= 1");
  const int rows = static_cast<int>(magnitude.rows());
  const int cols = static_cast<int>(magnitude.cols());
  const int width = cols * scale;
  const int height = rows * scale;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      px[static_cast<std::size_t>(y) * width + x] = gray_level(magnitude(y / scale, x / scale));
    }
  }
  return encode_pgm(px, width, height);
}

double band_mass_fraction(const Matrix& m, int half_width) {
  double inside = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      total += a;
      if (std::abs(i - j) < half_width) inside += a;
    }
  }
  return total > 0.0 ? inside / total : 0.0;
}

double quadrant_mass_fraction(const Matrix& m) {
  const Eigen::Index half_r = m.rows() / 2;
  const Eigen::Index half_c = m.cols() / 2;
  const double total = m.cwiseAbs().sum();
  const double inside = m.topLeftCorner(half_r, half_c).cwiseAbs().sum();
  return total > 0.0 ? inside / total : 0.0;
}

double off_diagonal_quadrant_fraction(const Matrix& m) {
  Matrix off = m.cwiseAbs();
  off.diagonal().setZero();
  const double total = off.sum();
  const double inside = off.topLeftCorner(m.rows() / 2, m.cols() / 2).sum();
  return total > 0.0 ? inside / total : 0.0;
}

std::vector<GrayMapCell> sparsity_grid(int size, const DesignConfig& config) {
  const TransformKind bases[] = {TransformKind::DCT2, TransformKind::DCT3, TransformKind::DST2,
                                 TransformKind::DST3};
  const std::pair<TransformKind, Side> columns[] = {{TransformKind::DST7, Side::Pre},
                                                    {TransformKind::DST7, Side::Post},
                                                    {TransformKind::DCT8, Side::Pre},
                                                    {TransformKind::DCT8, Side::Post}};
  std::vector<GrayMapCell> cells;
  for (auto base : bases) {
    const auto b = build_transform(base, size);
    for (const auto& [target, side] : columns) {
      const auto d = build_transform(target, size);
      cells.push_back({base, target, side, discover_sparsity(b, d, side, config)});
    }
  }
  return cells;
}

std::string grid_pgm(const std::vector<GrayMapCell>& cells, int columns, int scale) {
  if (cells.empty() || columns < 1 || scale < 1) {
    throw Error(ErrorCode::Configuration, "empty gray-map grid");
  }
  const int n = static_cast<int>(cells.front().map.magnitude.rows());
  const int rows = (static_cast<int>(cells.size()) + columns - 1) / columns;
  const int gutter = 2;
  const int cell = n * scale;
  const int width = columns * cell + (columns + 1) * gutter;
  const int height = rows * cell + (rows + 1) * gutter;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height, 255);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int gx = static_cast<int>(c) % columns;
    const int gy = static_cast<int>(c) / columns;
    const int x0 = gutter + gx * (cell + gutter);
    const int y0 = gutter + gy * (cell + gutter);
    const Matrix& mag = cells[c].map.magnitude;
    for (int y = 0; y < cell; ++y) {
      for (int x = 0; x < cell; ++x) {
        px[static_cast<std::size_t>(y0 + y) * width + x0 + x] =
            gray_level(mag(y / scale, x / scale));
      }
    }
  }
  return encode_pgm(px, width, height);
}

std::string grid_csv(const std::vector<GrayMapCell>& cells) {
  std::ostringstream os;
  os << "base,target,side,objective,converged,band_mass_lt6,top_left_quadrant_mass,"
        "off_diagonal_top_left_mass\n";
  for (const auto& c : cells) {
    os << to_string(c.base) << ',' << to_string(c.target) << ',' << to_string(c.side) << ','
       << format_double(c.map.objective) << ',' << (c.map.converged ? 1 : 0) << ','
       << format_double(band_mass_fraction(c.map.realized, 6)) << ','
       << format_double(quadrant_mass_fraction(c.map.realized)) << ','
       << format_double(off_diagonal_quadrant_fraction(c.map.realized)) << '\n';
  }
  return os.str();
}

Matrix pattern_mask(const SparsityPattern& pattern) {
  Matrix m = Matrix::Zero(pattern.size, pattern.size);
  for (int i = 0; i < pattern.size; ++i) {
    for (int j = 0; j < pattern.size; ++j) m(i, j) = pattern.allows(i, j) ? 1.0 : 0.0;
  }
  return m;
}

Matrix pattern_nonzeros(const SparsityPattern& pattern) {
  const auto support = structural_support(pattern_schedule_template(pattern));
  return support.cast<double>();
}

std::string basis_functions_csv(const Matrix& approx, const Matrix& desired) {
  if (approx.rows() != desired.rows() || approx.cols() != desired.cols()) {
    throw Error(ErrorCode::Shape, "basis function matrices differ in shape");
  }
  std::ostringstream os;
  os << "row,sample,desired,approx,row_max_deviation\n";
  for (Eigen::Index i = 0; i < desired.rows(); ++i) {
    const double dev = (approx.row(i) - desired.row(i)).cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < desired.cols(); ++j) {
      os << i << ',' << j << ',' << format_double(desired(i, j)) << ','
         << format_double(approx(i, j)) << ',' << format_double(dev) << '\n';
    }
  }
  return os.str();
}

}  // namespace tadj
