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

#include "tadj/transform_matrices.hpp"

#include <string>
#include <vector>

namespace tadj {

struct BasisComparison {
  int size = 0;
  std::vector<double> per_row_l2_error;  // ||H_i - D_i|| / ||D_i||
  std::vector<double> per_row_sq_error;  // ||H_i - D_i||^2, un-normalized
  double weighted_total = 0.0;           // weighted_error(H, D, alpha)
};

BasisComparison basis_comparison(const Matrix& h, const Matrix& d, double alpha);
BasisComparison basis_comparison(const Matrix& h, const Matrix& d);

/// "row,l2_error" CSV with a header line.
std::string basis_comparison_csv(const BasisComparison& comparison);

enum class CovarianceVariant { AR1, OneSidedResidual };

struct CovarianceModel {
  CovarianceVariant variant = CovarianceVariant::AR1;
  double rho = 0.0;  // AR1 only
  int size = 0;
  Matrix matrix;

  std::string name() const;
};

/// AR1(rho): K(i,j) = rho^|i-j|.
/// OneSidedResidual: K(i,j) = min(i,j) + 1, a random walk started from a
/// known boundary sample.
CovarianceModel residual_covariance_model(CovarianceVariant variant, int size, double rho = 0.95);

/// 10 log10(arithmetic mean / geometric mean) of the variances
/// diag(T K T^T), in dB.
double coding_gain(const Matrix& transform, const CovarianceModel& model);

/// Karhunen-Loeve transform of the model (rows are eigenvectors, decreasing
/// eigenvalue).
Matrix karhunen_loeve_transform(const CovarianceModel& model);

}  // namespace tadj
