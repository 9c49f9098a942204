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

#include "tadj/evaluation.hpp"

#include "tadj/adjustment_design.hpp"
#include "tadj/error.hpp"
#include "tadj/matrix_io.hpp"

#include <cmath>
#include <sstream>

namespace tadj {

BasisComparison basis_comparison(const Matrix& h, const Matrix& d, double alpha) {
  if (h.rows() != d.rows() || h.cols() != d.cols() || h.rows() != h.cols()) {
    throw Error(ErrorCode::Shape, "basis_comparison needs two square matrices of equal size");
  }
  const int n = static_cast<int>(h.rows());
  BasisComparison out;
  out.size = n;
  for (int i = 0; i < n; ++i) {
    const double diff = (h.row(i) - d.row(i)).squaredNorm();
    const double ref = d.row(i).norm();
    out.per_row_sq_error.push_back(diff);
    out.per_row_l2_error.push_back(ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff));
  }
  out.weighted_total = weighted_error(h, d, alpha);
  return out;
}

BasisComparison basis_comparison(const Matrix& h, const Matrix& d) {
  return basis_comparison(h, d, default_alpha(static_cast<int>(h.rows())));
}

std::string basis_comparison_csv(const BasisComparison& comparison) {
  std::ostringstream os;
  os << "row,l2_error\n";
  for (int i = 0; i < comparison.size; ++i) {
    os << i << ',' << format_double(comparison.per_row_l2_error[i]) << '\n';
  }
  return os.str();
}

std::string CovarianceModel::name() const {
  if (variant == CovarianceVariant::OneSidedResidual) return "one-sided";
  std::ostringstream os;
  os << "ar1(" << rho << ")";
  return os.str();
}

CovarianceModel residual_covariance_model(CovarianceVariant variant, int size, double rho) {
  if (size < 1) throw Error(ErrorCode::InvalidDimension, "model size must be >= 1");
  CovarianceModel model;
  model.variant = variant;
  model.size = size;
  model.matrix.resize(size, size);
  if (variant == CovarianceVariant::AR1) {
    if (!(rho > 0.0 && rho < 1.0)) {
      throw Error(ErrorCode::Model, "AR1 correlation must lie in (0, 1)");
    }
    model.rho = rho;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) model.matrix(i, j) = std::pow(rho, std::abs(i - j));
    }
  } else {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) model.matrix(i, j) = std::min(i, j) + 1.0;
    }
  }
  return model;
}

double coding_gain(const Matrix& transform, const CovarianceModel& model) {
  if (transform.rows() != model.size || transform.cols() != model.size) {
    throw Error(ErrorCode::Shape, "transform and covariance model sizes differ");
  }
  const Vector variances = (transform * model.matrix * transform.transpose()).diagonal();
  double arith = 0.0;
  double log_geo = 0.0;
  for (Eigen::Index i = 0; i < variances.size(); ++i) {
    const double v = variances(i);
    if (!(v > 0.0)) {
      throw Error(ErrorCode::Model, "non-positive coefficient variance; covariance is not positive definite");
    }
    arith += v;
    log_geo += std::log(v);
  }
  const double n = static_cast<double>(variances.size());
  arith /= n;
  log_geo /= n;
  return 10.0 * (std::log10(arith) - log_geo / std::log(10.0));
}

Matrix karhunen_loeve_transform(const CovarianceModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(model.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Model, "eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues; rows of the KLT go in decreasing order.
  return solver.eigenvectors().rowwise().reverse().transpose();
}

}  // namespace tadj
