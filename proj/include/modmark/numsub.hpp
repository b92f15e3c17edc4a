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

#ifndef MODMARK_NUMSUB_HPP
#define MODMARK_NUMSUB_HPP

#include <complex>

#include <Eigen/Dense>

namespace modmark {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Relative positive-definiteness threshold: eigenvalues at or below
// kPdThreshold * lambda_max are treated as zero.
inline constexpr double kPdThreshold = 1e-12;

struct HermEig {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary, columns
};

// Tolerance policy. effective = base * condition_scale * max(1, input_norm).
struct Tolerance {
  double base = 1e-9;
  double condition_scale = 1.0;

  double effective(double input_norm = 0.0) const;
};

// kappa^power, with kappa the eigenvalue ratio of a density. Always >= 1.
double condition_scale(double kappa, double power);

// Deterministic Hermitian eigendecomposition.
// Throws NonHermitian when ||A - A^H||_F > 1e-12 ||A||_F, NoConvergence when
// the solver fails.
HermEig herm_eig(const CMatrix& a);

// A^z = V diag(exp(z log lambda)) V^H with the principal logarithm.
// Throws NotPositiveDefinite if lambda_min <= kPdThreshold * lambda_max.
CMatrix matrix_power(const CMatrix& a, cplx z);
CMatrix matrix_power(const HermEig& eig, cplx z);

// Principal matrix logarithm of a positive-definite matrix.
CMatrix matrix_log(const CMatrix& a);

// Largest singular value.
double op_norm(const CMatrix& a);

double frobenius(const CMatrix& a);
double hermiticity_residual(const CMatrix& a);
bool all_finite(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace modmark

#endif  // MODMARK_NUMSUB_HPP
