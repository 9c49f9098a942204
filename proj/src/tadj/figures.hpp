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

#include <cstdint>
#include <string>
#include <vector>

namespace tadj {

/// Binary 8-bit PGM ("P5"). `levels` is row-major.
std::string encode_pgm(const std::vector<std::uint8_t>& levels, int width, int height);

/// Gray map of magnitudes in [0, 1]: 1 -> black, 0 -> white. Each entry
/// becomes a scale x scale square.
std::string magnitude_pgm(const Matrix& magnitude, int scale = 1);

/// Fraction of sum |m(i,j)| lying within |i - j| < half_width.
double band_mass_fraction(const Matrix& m, int half_width);
/// Fraction of sum |m(i,j)| with both indices below N/2.
double quadrant_mass_fraction(const Matrix& m);
/// Same, with the diagonal excluded.
double off_diagonal_quadrant_fraction(const Matrix& m);

struct GrayMapCell {
  TransformKind base;
  TransformKind target;
  Side side;
  SparsityMap map;
};

/// Sparsity discovery for every base in {DCT-2, DCT-3, DST-2, DST-3} (grid
/// rows) against DST-7 and DCT-8 on both sides (grid columns: dst7/pre,
/// dst7/post, dct8/pre, dct8/post).
std::vector<GrayMapCell> sparsity_grid(int size, const DesignConfig& config);
/// All cells in one image, separated by white gutters.
std::string grid_pgm(const std::vector<GrayMapCell>& cells, int columns, int scale);
std::string grid_csv(const std::vector<GrayMapCell>& cells);

/// 1 where the pattern lets an entry depart from the identity, else 0.
Matrix pattern_mask(const SparsityPattern& pattern);
/// Structural non-zeros of an adjustment with this pattern, 1 or 0.
Matrix pattern_nonzeros(const SparsityPattern& pattern);

/// One line per (row, sample): row,sample,desired,approx,row_max_deviation.
std::string basis_functions_csv(const Matrix& approx, const Matrix& desired);

}  // namespace tadj
