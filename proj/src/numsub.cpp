// Copyright 2026 The modmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modmark/numsub.hpp"

#include <algorithm>
#include <cmath>

#include "modmark/error.hpp"

namespace modmark {

double Tolerance::effective(double input_norm) const {
  return base * condition_scale * std::max(1.0, input_norm);
}

double condition_scale(double kappa, double power) {
  return std::max(1.0, std::pow(std::max(kappa, 1.0), std::abs(power)));
}

double frobenius(const CMatrix& a) { return a.norm(); }

double hermiticity_residual(const CMatrix& a) {
  return (a - a.adjoint()).norm();
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx v = a.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

HermEig herm_eig(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "herm_eig needs a square matrix");
  }
  if (!all_finite(a)) {
    throw Error(ErrorCode::NonHermitian, "non-finite entries");
  }
  if (hermiticity_residual(a) > 1e-12 * a.norm()) {
    throw Error(ErrorCode::NonHermitian, "input fails the symmetry check");
  }
  // Solve on the exactly symmetrized matrix so the result is a function of
  // the Hermitian part only.
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "eigensolver iteration budget exhausted");
  }
  return HermEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix matrix_power(const HermEig& eig, cplx z) {
  const auto& lam = eig.eigenvalues;
  const Eigen::Index n = lam.size();
  if (n == 0) return CMatrix(0, 0);
  const double lmax = lam.maxCoeff();
  if (!(lmax > 0.0) || lam.minCoeff() <= kPdThreshold * lmax) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "eigenvalue at or below the positive-definiteness threshold");
  }
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(z * std::log(lam(i)));
  return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix matrix_power(const CMatrix& a, cplx z) {
  return matrix_power(herm_eig(a), z);
}

CMatrix matrix_log(const CMatrix& a) {
  const HermEig eig = herm_eig(a);
  const auto& lam = eig.eigenvalues;
  const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
  if (lam.size() && (!(lmax > 0.0) || lam.minCoeff() <= kPdThreshold * lmax)) {
    throw Error(ErrorCode::NotPositiveDefinite, "matrix_log of a singular matrix");
  }
  CVector d = lam.array().log().cast<cplx>();
  return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace modmark
