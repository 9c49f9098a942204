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

#include <algorithm>

#include <doctest.h>

#include "support.hpp"
#include "tadj/error.hpp"
#include "tadj/figures.hpp"

using namespace tadj;

TEST_CASE("pgm encoding") {
  const auto pgm = encode_pgm({0, 128, 255, 7, 8, 9}, 3, 2);
  CHECK(pgm.rfind("P5\n3 2\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n3 2\n255\n").size() + 6);
  CHECK(static_cast<unsigned char>(pgm.back()) == 9);
  CHECK_THROWS_AS(encode_pgm({1, 2}, 3, 2), Error);
}

TEST_CASE("magnitude maps darken with magnitude") {
  Matrix m(1, 2);
  m << 1.0, 0.0;
  const auto pgm = magnitude_pgm(m, 2);
  const std::string header = "P5\n4 2\n255\n";
  REQUIRE(pgm.size() == header.size() + 8);
  CHECK(static_cast<unsigned char>(pgm[header.size()]) == 0);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 2]) == 255);
  CHECK_THROWS_AS(magnitude_pgm(m, 0), Error);
}

TEST_CASE("mass fractions") {
  const Matrix id = Matrix::Identity(8, 8);
  CHECK(band_mass_fraction(id, 1) == 1.0);
  CHECK(quadrant_mass_fraction(id) == 0.5);
  CHECK(off_diagonal_quadrant_fraction(id) == 0.0);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = 1.0;
  m(1, 0) = 3.0;
  CHECK(band_mass_fraction(m, 2) == 0.75);
  CHECK(quadrant_mass_fraction(m) == 0.75);
  CHECK(off_diagonal_quadrant_fraction(m) == 0.75);
}

TEST_CASE("sub-block mask has B squared ones") {
  const auto mask = pattern_mask(SparsityPattern::subblock(8, 32));
  CHECK(mask.sum() == 64.0);
  CHECK(mask.topLeftCorner(8, 8).sum() == 64.0);
  const auto band = pattern_mask(SparsityPattern::band(2, 5));
  CHECK(band.sum() == 13.0);
  const auto nz = pattern_nonzeros(SparsityPattern::subblock(8, 32));
  CHECK(nz.sum() == 64.0 + 24.0);
}

TEST_CASE("sparsity grid layout") {
  DesignConfig c;
  c.restarts = 1;
  const auto cells = sparsity_grid(8, c);
  REQUIRE(cells.size() == 16);
  CHECK(cells[0].base == TransformKind::DCT2);
  CHECK(cells[0].target == TransformKind::DST7);
  CHECK(cells[0].side == Side::Pre);
  CHECK(cells[3].target == TransformKind::DCT8);
  CHECK(cells[3].side == Side::Post);
  CHECK(cells[15].base == TransformKind::DST3);
  const auto pgm = grid_pgm(cells, 4, 2);
  const int side = 4 * 16 + 5 * 2;
  CHECK(pgm.rfind("P5\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n", 0) == 0);
  const auto csv = grid_csv(cells);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("basis function export") {
  const auto d = build_transform(TransformKind::DST7, 4).entries;
  const auto csv = basis_functions_csv(d, d);
  CHECK(csv.rfind("row,sample,desired,approx,row_max_deviation\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
  CHECK_THROWS_AS(basis_functions_csv(d, Matrix::Zero(3, 4)), Error);
}
