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

#include "modmark/gns.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "modmark/error.hpp"
#include "modmark/random.hpp"

namespace modmark {

namespace {

void check_shapes(const BlockAlgebra& alg, const std::vector<CMatrix>& blocks) {
  if (blocks.size() != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "GNS vector block count");
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const int n = alg.block_dim(k);
    if (blocks[k].rows() != n || blocks[k].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "GNS vector block shape");
    }
  }
}

std::vector<CMatrix> powers(const std::vector<HermEig>& eig, cplx z) {
  std::vector<CMatrix> out;
  out.reserve(eig.size());
  for (const auto& e : eig) out.push_back(matrix_power(e, z));
  return out;
}

// Blockwise a_k * xi_k * b_k.
GnsVector sandwich(const std::vector<CMatrix>& a, const GnsVector& xi,
                   const std::vector<CMatrix>& b) {
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < xi.blocks().size(); ++k) out.push_back(a[k] * xi.block(k) * b[k]);
  return GnsVector(xi.parent(), std::move(out));
}

CMatrix block_diag_kron(const BlockAlgebra& alg, const std::vector<CMatrix>& left_factor,
                        const std::vector<CMatrix>& right_factor) {
  CMatrix m = CMatrix::Zero(alg.hs_dim(), alg.hs_dim());
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const auto n2 = static_cast<Eigen::Index>(alg.block_dim(k)) * alg.block_dim(k);
    const auto o = alg.hs_offset(k);
    m.block(o, o, n2, n2) = kron(left_factor[k], right_factor[k]);
  }
  return m;
}

std::vector<CMatrix> identities(const BlockAlgebra& alg) {
  std::vector<CMatrix> out;
  for (int n : alg.block_dims()) out.push_back(CMatrix::Identity(n, n));
  return out;
}

}  // namespace

GnsVector::GnsVector(BlockAlgebra parent, std::vector<CMatrix> blocks)
    : parent_(std::move(parent)), blocks_(std::move(blocks)) {
  check_shapes(parent_, blocks_);
}

GnsVector GnsVector::zero(const BlockAlgebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_dims()) b.push_back(CMatrix::Zero(n, n));
  return GnsVector(alg, std::move(b));
}

GnsVector GnsVector::from_coords(const BlockAlgebra& alg, const CVector& v) {
  const AlgebraElement e = AlgebraElement::from_coords(alg, v);
  return GnsVector(alg, e.blocks());
}

GnsVector GnsVector::random(const BlockAlgebra& alg, std::uint64_t seed) {
  const AlgebraElement g = random_element(alg, seed, ElementKind::General);
  GnsVector v(alg, g.blocks());
  return (1.0 / v.norm()) * v;
}

CVector GnsVector::coords() const { return AlgebraElement(parent_, blocks_).coords(); }

double GnsVector::norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

GnsVector& GnsVector::operator+=(const GnsVector& o) {
  require_same(parent_, o.parent_, "GNS add");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

GnsVector& GnsVector::operator-=(const GnsVector& o) {
  require_same(parent_, o.parent_, "GNS subtract");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

GnsVector& GnsVector::operator*=(cplx c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

cplx inner(const GnsVector& xi, const GnsVector& eta) {
  require_same(xi.parent(), eta.parent(), "inner");
  cplx s = 0.0;
  for (std::size_t k = 0; k < xi.blocks().size(); ++k) {
    s += (eta.block(k).adjoint() * xi.block(k)).trace();
  }
  return s;
}

ModularData::ModularData(FaithfulState state, double z_max)
    : state_(std::move(state)), z_max_(z_max), omega_(GnsVector::zero(state_.algebra())) {
  double lmax = 0.0;
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& d : state_.density().blocks()) {
    eig_.push_back(herm_eig(d));
    lmax = std::max(lmax, eig_.back().eigenvalues.maxCoeff());
    lmin = std::min(lmin, eig_.back().eigenvalues.minCoeff());
  }
  kappa_ = lmax / lmin;
  sqrt_d_ = powers(eig_, 0.5);
  inv_sqrt_d_ = powers(eig_, -0.5);
  for (const auto& e : eig_) {
    CVector l = e.eigenvalues.array().log().cast<cplx>();
    log_d_.push_back(e.eigenvectors * l.asDiagonal() * e.eigenvectors.adjoint());
  }
  omega_ = GnsVector(state_.algebra(), sqrt_d_);
}

std::vector<CMatrix> ModularData::density_power(cplx z) const { return powers(eig_, z); }

std::vector<double> ModularData::delta_spectrum() const {
  std::vector<double> out;
  for (const auto& e : eig_) {
    const auto n = e.eigenvalues.size();
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) out.push_back(e.eigenvalues(i) / e.eigenvalues(j));
    }
  }
  return out;
}

std::vector<double> ModularData::modular_frequencies() const {
  std::vector<double> out;
  for (const auto& e : eig_) {
    const auto n = e.eigenvalues.size();
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out.push_back(std::log(e.eigenvalues(i)) - std::log(e.eigenvalues(j)));
      }
    }
  }
  return out;
}

void ModularData::check_power(cplx z) const {
  if (std::abs(z.real()) > z_max_) {
    throw Error(ErrorCode::PowerRangeExceeded,
                "|Re z| = " + std::to_string(std::abs(z.real())) + " exceeds z_max");
  }
}

GnsVector embed(const ModularData& md, const AlgebraElement& x) {
  require_same(md.algebra(), x.parent(), "embed");
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) out.push_back(x.block(k) * md.sqrt_density()[k]);
  return GnsVector(x.parent(), std::move(out));
}

GnsVector left_act(const AlgebraElement& x, const GnsVector& xi) {
  require_same(x.parent(), xi.parent(), "left_act");
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < xi.blocks().size(); ++k) out.push_back(x.block(k) * xi.block(k));
  return GnsVector(xi.parent(), std::move(out));
}

GnsVector right_act(const AlgebraElement& x, const GnsVector& xi) {
  require_same(x.parent(), xi.parent(), "right_act");
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < xi.blocks().size(); ++k) out.push_back(xi.block(k) * x.block(k));
  return GnsVector(xi.parent(), std::move(out));
}

GnsVector apply_J(const ModularData& md, const GnsVector& xi) {
  require_same(md.algebra(), xi.parent(), "apply_J");
  std::vector<CMatrix> out;
  for (const auto& b : xi.blocks()) out.push_back(b.adjoint());
  return GnsVector(xi.parent(), std::move(out));
}

GnsVector delta_power(const ModularData& md, cplx z, const GnsVector& xi) {
  require_same(md.algebra(), xi.parent(), "delta_power");
  md.check_power(z);
  if (z == cplx(0.5, 0.0)) {
    return sandwich(md.sqrt_density(), xi, md.inv_sqrt_density());
  }
  if (z == cplx(-0.5, 0.0)) {
    return sandwich(md.inv_sqrt_density(), xi, md.sqrt_density());
  }
  return sandwich(md.density_power(z), xi, md.density_power(-z));
}

GnsVector apply_S(const ModularData& md, const GnsVector& xi) {
  return apply_J(md, delta_power(md, 0.5, xi));
}

AlgebraElement modular_flow(const ModularData& md, double t, const AlgebraElement& x) {
  require_same(md.algebra(), x.parent(), "modular_flow");
  const auto u = md.density_power(cplx(0.0, t));
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    out.push_back(u[k] * x.block(k) * u[k].adjoint());
  }
  return AlgebraElement(x.parent(), std::move(out));
}

AlgebraElement modular_smear(const ModularData& md, const AlgebraElement& x,
                             std::span<const double> f_samples, double half_width,
                             double step) {
  require_same(md.algebra(), x.parent(), "modular_smear");
  if (!(half_width > 0.0) || !(step > 0.0) || !std::isfinite(half_width) ||
      !std::isfinite(step) || step >= half_width) {
    throw Error(ErrorCode::BadQuadrature, "need 0 < h < L");
  }
  const double intervals = 2.0 * half_width / step;
  const auto n_intervals = static_cast<std::size_t>(std::llround(intervals));
  if (std::abs(intervals - static_cast<double>(n_intervals)) > 1e-6 * intervals) {
    throw Error(ErrorCode::BadQuadrature, "2L/h must be an integer");
  }
  if (f_samples.size() != n_intervals + 1) {
    throw Error(ErrorCode::BadQuadrature, "expected round(2L/h)+1 samples");
  }
  for (double f : f_samples) {
    if (!std::isfinite(f)) throw Error(ErrorCode::BadQuadrature, "non-finite sample");
  }

  std::vector<CMatrix> out;
  for (std::size_t b = 0; b < x.blocks().size(); ++b) {
    const auto& e = md.d_eig()[b];
    const auto n = e.eigenvalues.size();
    const CMatrix xe = e.eigenvectors.adjoint() * x.block(b) * e.eigenvectors;
    CMatrix weights = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double omega = std::log(e.eigenvalues(i)) - std::log(e.eigenvalues(j));
        cplx acc = 0.0;
        for (std::size_t k = 0; k <= n_intervals; ++k) {
          const double t = -half_width + static_cast<double>(k) * step;
          const double w = (k == 0 || k == n_intervals) ? 0.5 * step : step;
          acc += w * f_samples[k] * std::exp(cplx(0.0, t * omega));
        }
        weights(i, j) = acc;
      }
    }
    const CMatrix smeared = weights.cwiseProduct(xe);
    out.push_back(e.eigenvectors * smeared * e.eigenvectors.adjoint());
  }
  return AlgebraElement(x.parent(), std::move(out));
}

AlgebraElement modular_smear(const ModularData& md, const AlgebraElement& x,
                             const std::function<double(double)>& f, double half_width,
                             double step) {
  if (!(half_width > 0.0) || !(step > 0.0) || step >= half_width) {
    throw Error(ErrorCode::BadQuadrature, "need 0 < h < L");
  }
  const auto n_intervals = static_cast<std::size_t>(std::llround(2.0 * half_width / step));
  std::vector<double> samples(n_intervals + 1);
  for (std::size_t k = 0; k <= n_intervals; ++k) {
    samples[k] = f(-half_width + static_cast<double>(k) * step);
  }
  return modular_smear(md, x, samples, half_width, step);
}

AnalyticReport analytic_vector_check(const ModularData& md, const GnsVector& xi,
                                     std::span<const cplx> z_samples) {
  AnalyticReport rep;
  for (cplx z : z_samples) md.check_power(z);
  for (cplx z : z_samples) {
    for (cplx zp : z_samples) {
      md.check_power(z + zp);
      const GnsVector lhs = delta_power(md, z, delta_power(md, zp, xi));
      const GnsVector rhs = delta_power(md, z + zp, xi);
      rep.group_residual = std::max(rep.group_residual, (lhs - rhs).norm());
    }
    // Boundary value on the imaginary axis against exp(it log D).
    const double t = z.imag();
    std::vector<CMatrix> flowed;
    for (std::size_t k = 0; k < xi.blocks().size(); ++k) {
      const CMatrix gen = cplx(0.0, t) * md.log_density()[k];
      const CMatrix u = gen.exp();
      flowed.push_back(u * xi.block(k) * u.adjoint());
    }
    const GnsVector boundary(xi.parent(), std::move(flowed));
    rep.boundary_residual =
        std::max(rep.boundary_residual, (delta_power(md, cplx(0.0, t), xi) - boundary).norm());
  }
  rep.max_residual = std::max(rep.group_residual, rep.boundary_residual);
  return rep;
}

CMatrix delta_matrix(const ModularData& md, cplx z) {
  md.check_power(z);
  std::vector<CMatrix> left = md.density_power(-z);
  for (auto& m : left) m = m.transpose().eval();
  return block_diag_kron(md.algebra(), left, md.density_power(z));
}

CMatrix swap_matrix(const BlockAlgebra& alg) {
  CMatrix p = CMatrix::Zero(alg.hs_dim(), alg.hs_dim());
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    const auto o = alg.hs_offset(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) p(o + j + i * n, o + i + j * n) = 1.0;
    }
  }
  return p;
}

CMatrix right_mult_matrix(const BlockAlgebra& alg, const std::vector<CMatrix>& a) {
  std::vector<CMatrix> at;
  for (const auto& m : a) at.push_back(m.transpose());
  return block_diag_kron(alg, at, identities(alg));
}

CMatrix left_mult_matrix(const BlockAlgebra& alg, const std::vector<CMatrix>& a) {
  return block_diag_kron(alg, identities(alg), a);
}

CMatrix eigen_frame_matrix(const ModularData& md) {
  std::vector<CMatrix> vc;
  std::vector<CMatrix> v;
  for (const auto& e : md.d_eig()) {
    vc.push_back(e.eigenvectors.conjugate());
    v.push_back(e.eigenvectors);
  }
  return block_diag_kron(md.algebra(), vc, v);
}

std::map<std::string, double> gns_axiom_residuals(const ModularData& md, std::uint64_t seed) {
  const BlockAlgebra& alg = md.algebra();
  const GnsVector xi = GnsVector::random(alg, mix_seed(seed, 1));
  const GnsVector eta = GnsVector::random(alg, mix_seed(seed, 2));
  AlgebraElement x = random_element(alg, mix_seed(seed, 3), ElementKind::General);
  AlgebraElement y = random_element(alg, mix_seed(seed, 4), ElementKind::General);
  x *= 1.0 / x.norm();
  y *= 1.0 / y.norm();
  const double ts[] = {-1.0, 0.3, 5.0};

  std::map<std::string, double> r;
  const GnsVector jxi = apply_J(md, xi);

  {
    const double fact = (apply_S(md, xi) - delta_power(md, -0.5, jxi)).norm();
    const GnsVector sx = apply_S(md, embed(md, x));
    const GnsVector xstar = embed(md, x.adjoint());
    const double emb = (sx - xstar).norm() / std::max(1.0, xstar.norm());
    r["s_factorization"] = std::max(fact, emb);
  }
  {
    const cplx lhs = inner(delta_power(md, 1.0, xi), eta);
    const cplx rhs = inner(apply_S(md, eta), apply_S(md, xi));
    r["delta_is_s_star_s"] = std::abs(lhs - rhs);
  }
  {
    const double inv = (apply_J(md, jxi) - xi).norm();
    const cplx lhs = inner(jxi, apply_J(md, eta));
    const cplx rhs = inner(eta, xi);
    r["j_involution"] = std::max(inv, std::abs(lhs - rhs));
  }
  r["j_delta_j"] =
      (apply_J(md, delta_power(md, 1.0, jxi)) - delta_power(md, -1.0, xi)).norm();
  {
    double w = (apply_J(md, md.omega()) - md.omega()).norm();
    double c = 0.0;
    for (double t : ts) {
      w = std::max(w, (delta_power(md, cplx(0.0, t), md.omega()) - md.omega()).norm());
      c = std::max(c, (delta_power(md, cplx(0.0, t), jxi) -
                       apply_J(md, delta_power(md, cplx(0.0, t), xi)))
                          .norm());
    }
    r["omega_fixed"] = w;
    r["delta_it_commutes_j"] = c;
  }
  {
    const GnsVector lhs = left_act(x, apply_J(md, left_act(y, jxi)));
    const GnsVector rhs = apply_J(md, left_act(y, apply_J(md, left_act(x, xi))));
    r["tomita_commutant"] = (lhs - rhs).norm();
  }
  {
    double f = 0.0;
    const GnsVector ex = embed(md, x);
    for (double t : ts) {
      f = std::max(f, (embed(md, modular_flow(md, t, x)) - delta_power(md, cplx(0.0, t), ex)).norm());
    }
    r["flow_implements_delta"] = f;
  }
  return r;
}

}  // namespace modmark
