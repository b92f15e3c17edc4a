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

#ifndef MODMARK_GNS_HPP
#define MODMARK_GNS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "modmark/algebra.hpp"

namespace modmark {

// Vector of L^2(M, phi) in the Hilbert-Schmidt picture: x Omega <-> x D^{1/2}.
class GnsVector {
 public:
  GnsVector(BlockAlgebra parent, std::vector<CMatrix> blocks);

  static GnsVector zero(const BlockAlgebra& alg);
  static GnsVector from_coords(const BlockAlgebra& alg, const CVector& v);
  static GnsVector random(const BlockAlgebra& alg, std::uint64_t seed);

  const BlockAlgebra& parent() const { return parent_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(std::size_t k) const { return blocks_[k]; }

  CVector coords() const;
  double norm() const;

  GnsVector& operator+=(const GnsVector& o);
  GnsVector& operator-=(const GnsVector& o);
  GnsVector& operator*=(cplx c);
  friend GnsVector operator+(GnsVector a, const GnsVector& b) { return a += b; }
  friend GnsVector operator-(GnsVector a, const GnsVector& b) { return a -= b; }
  friend GnsVector operator*(cplx c, GnsVector a) { return a *= c; }

 private:
  BlockAlgebra parent_;
  std::vector<CMatrix> blocks_;
};

// <xi, eta> = sum_k Tr(eta_k^H xi_k); linear in the first argument.
cplx inner(const GnsVector& xi, const GnsVector& eta);

// Modular package of a faithful state. Immutable after construction.
class ModularData {
 public:
  explicit ModularData(FaithfulState state, double z_max = 2.0);

  const FaithfulState& state() const { return state_; }
  const BlockAlgebra& algebra() const { return state_.algebra(); }
  const std::vector<HermEig>& d_eig() const { return eig_; }
  const GnsVector& omega() const { return omega_; }
  double z_max() const { return z_max_; }
  // lambda_max / lambda_min over all blocks.
  double kappa() const { return kappa_; }

  // Per-block D^z.
  std::vector<CMatrix> density_power(cplx z) const;
  const std::vector<CMatrix>& sqrt_density() const { return sqrt_d_; }
  const std::vector<CMatrix>& inv_sqrt_density() const { return inv_sqrt_d_; }
  const std::vector<CMatrix>& log_density() const { return log_d_; }

  // Ratios lambda_i / lambda_j per block, in Hilbert-Schmidt coordinate order
  // of D's eigenbasis.
  std::vector<double> delta_spectrum() const;
  // log(lambda_i) - log(lambda_j) in the same order.
  std::vector<double> modular_frequencies() const;

  void check_power(cplx z) const;

 private:
  FaithfulState state_;
  double z_max_;
  std::vector<HermEig> eig_;
  std::vector<CMatrix> sqrt_d_;
  std::vector<CMatrix> inv_sqrt_d_;
  std::vector<CMatrix> log_d_;
  GnsVector omega_;
  double kappa_ = 1.0;
};

GnsVector embed(const ModularData& md, const AlgebraElement& x);

GnsVector left_act(const AlgebraElement& x, const GnsVector& xi);
GnsVector right_act(const AlgebraElement& x, const GnsVector& xi);

// J xi = xi^H blockwise (conjugate-linear).
GnsVector apply_J(const ModularData& md, const GnsVector& xi);
// Delta^z xi = D^z xi D^{-z}. Throws PowerRangeExceeded if |Re z| > z_max.
GnsVector delta_power(const ModularData& md, cplx z, const GnsVector& xi);
// S = J Delta^{1/2}.
GnsVector apply_S(const ModularData& md, const GnsVector& xi);

// sigma_t(x) = D^{it} x D^{-it}.
AlgebraElement modular_flow(const ModularData& md, double t, const AlgebraElement& x);

// Trapezoidal approximation of int_{-L}^{L} f(t) sigma_t(x) dt from samples
// f(-L + k h), k = 0..round(2L/h). Throws BadQuadrature.
AlgebraElement modular_smear(const ModularData& md, const AlgebraElement& x,
                             std::span<const double> f_samples, double half_width,
                             double step);
AlgebraElement modular_smear(const ModularData& md, const AlgebraElement& x,
                             const std::function<double(double)>& f, double half_width,
                             double step);

struct AnalyticReport {
  double group_residual = 0.0;     // max ||D^z D^z' xi - D^{z+z'} xi||
  double boundary_residual = 0.0;  // max ||Delta^{it} xi - exp(it log Delta) xi||
  double max_residual = 0.0;
};

AnalyticReport analytic_vector_check(const ModularData& md, const GnsVector& xi,
                                     std::span<const cplx> z_samples);

// Explicit matrices on Hilbert-Schmidt coordinates.
CMatrix delta_matrix(const ModularData& md, cplx z);
// vec(xi) -> vec(xi^T) per block; J acts as swap_matrix * conj.
CMatrix swap_matrix(const BlockAlgebra& alg);
// vec(xi) -> vec(xi A_k) per block.
CMatrix right_mult_matrix(const BlockAlgebra& alg, const std::vector<CMatrix>& a);
// vec(xi) -> vec(A_k xi) per block.
CMatrix left_mult_matrix(const BlockAlgebra& alg, const std::vector<CMatrix>& a);
// Unitary taking eigenbasis coordinates to standard ones: vec(V X V^H).
CMatrix eigen_frame_matrix(const ModularData& md);

// Named residuals of the modular axioms on seeded random vectors/elements.
std::map<std::string, double> gns_axiom_residuals(const ModularData& md, std::uint64_t seed);

}  // namespace modmark

#endif  // MODMARK_GNS_HPP
