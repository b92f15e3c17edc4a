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

#include "modmark/algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "modmark/error.hpp"
#include "modmark/random.hpp"

namespace modmark {

BlockAlgebra::BlockAlgebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::ShapeMismatch, "algebra needs at least one block");
  for (int n : dims_) {
    if (n < 1) throw Error(ErrorCode::ShapeMismatch, "block dimensions must be positive");
    hs_offsets_.push_back(hs_dim_);
    matrix_offsets_.push_back(matrix_dim_);
    hs_dim_ += static_cast<Eigen::Index>(n) * n;
    matrix_dim_ += n;
  }
}

std::vector<MatrixUnit> matrix_units(const BlockAlgebra& alg) {
  std::vector<MatrixUnit> out;
  out.reserve(static_cast<std::size_t>(alg.hs_dim()));
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    for (int col = 0; col < n; ++col) {
      for (int row = 0; row < n; ++row) out.push_back({k, row, col});
    }
  }
  return out;
}

void require_same(const BlockAlgebra& a, const BlockAlgebra& b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": algebras differ");
}

AlgebraElement::AlgebraElement(BlockAlgebra parent, std::vector<CMatrix> blocks)
    : parent_(std::move(parent)), blocks_(std::move(blocks)) {
  if (blocks_.size() != parent_.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "block count does not match the algebra");
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = parent_.block_dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(k) + " has the wrong shape");
    }
  }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_dims()) b.push_back(CMatrix::Zero(n, n));
  return AlgebraElement(alg, std::move(b));
}

AlgebraElement AlgebraElement::identity(const BlockAlgebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_dims()) b.push_back(CMatrix::Identity(n, n));
  return AlgebraElement(alg, std::move(b));
}

AlgebraElement AlgebraElement::unit(const BlockAlgebra& alg, const MatrixUnit& e) {
  AlgebraElement x = zero(alg);
  x.block(e.block)(e.row, e.col) = 1.0;
  return x;
}

AlgebraElement AlgebraElement::from_coords(const BlockAlgebra& alg, const CVector& v) {
  if (v.size() != alg.hs_dim()) throw Error(ErrorCode::ShapeMismatch, "coordinate length");
  std::vector<CMatrix> b;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    b.push_back(Eigen::Map<const CMatrix>(v.data() + alg.hs_offset(k), n, n));
  }
  return AlgebraElement(alg, std::move(b));
}

AlgebraElement AlgebraElement::compress(const BlockAlgebra& alg, const CMatrix& m) {
  if (m.rows() != alg.matrix_dim() || m.cols() != alg.matrix_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "compress: matrix size");
  }
  std::vector<CMatrix> b;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    const auto o = alg.matrix_offset(k);
    b.push_back(m.block(o, o, n, n));
  }
  return AlgebraElement(alg, std::move(b));
}

CVector AlgebraElement::coords() const {
  CVector v(parent_.hs_dim());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto n = blocks_[k].size();
    v.segment(parent_.hs_offset(k), n) = Eigen::Map<const CVector>(blocks_[k].data(), n);
  }
  return v;
}

CMatrix AlgebraElement::as_matrix() const {
  CMatrix m = CMatrix::Zero(parent_.matrix_dim(), parent_.matrix_dim());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = parent_.block_dim(k);
    const auto o = parent_.matrix_offset(k);
    m.block(o, o, n, n) = blocks_[k];
  }
  return m;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return AlgebraElement(parent_, std::move(b));
}

double AlgebraElement::norm() const {
  double s = 0.0;
  for (const auto& m : blocks_) s += m.squaredNorm();
  return std::sqrt(s);
}

cplx AlgebraElement::trace() const {
  cplx t = 0.0;
  for (const auto& m : blocks_) t += m.trace();
  return t;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& y) {
  require_same(parent_, y.parent_, "add");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += y.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& y) {
  require_same(parent_, y.parent_, "subtract");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= y.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx c) {
  for (auto& m : blocks_) m *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x.parent_, y.parent_, "multiply");
  std::vector<CMatrix> b;
  for (std::size_t k = 0; k < x.blocks_.size(); ++k) b.push_back(x.blocks_[k] * y.blocks_[k]);
  return AlgebraElement(x.parent_, std::move(b));
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) { return x * y; }

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return x * y - y * x;
}

FaithfulState::FaithfulState(AlgebraElement density) : density_(std::move(density)) {
  for (const auto& d : density_.blocks()) {
    if (!all_finite(d)) throw Error(ErrorCode::NotPositiveDefinite, "density has non-finite entries");
    if (hermiticity_residual(d) > 1e-12 * std::max(1.0, d.norm())) {
      throw Error(ErrorCode::NonHermitian, "density block is not Hermitian");
    }
  }
  if (std::abs(density_.trace() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotPositiveDefinite, "density must have unit trace");
  }
  double lmax = 0.0;
  double lmin = 0.0;
  bool first = true;
  for (const auto& d : density_.blocks()) {
    const HermEig e = herm_eig(d);
    lmax = first ? e.eigenvalues.maxCoeff() : std::max(lmax, e.eigenvalues.maxCoeff());
    lmin = first ? e.eigenvalues.minCoeff() : std::min(lmin, e.eigenvalues.minCoeff());
    first = false;
  }
  if (!(lmin > kPdThreshold * lmax)) {
    throw Error(ErrorCode::NotPositiveDefinite, "density is not faithful");
  }
}

FaithfulState FaithfulState::normalized(AlgebraElement density) {
  const cplx t = density.trace();
  density *= 1.0 / t.real();
  return FaithfulState(std::move(density));
}

FaithfulState FaithfulState::tracial(const BlockAlgebra& alg) {
  return normalized(AlgebraElement::identity(alg));
}

double FaithfulState::condition_number() const {
  double lmax = 0.0;
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& d : density_.blocks()) {
    const HermEig e = herm_eig(d);
    lmax = std::max(lmax, e.eigenvalues.maxCoeff());
    lmin = std::min(lmin, e.eigenvalues.minCoeff());
  }
  return lmax / lmin;
}

bool approx_equal(const FaithfulState& a, const FaithfulState& b, double tol) {
  if (!(a.algebra() == b.algebra())) return false;
  return (a.density() - b.density()).norm() <= tol;
}

cplx evaluate_state(const FaithfulState& s, const AlgebraElement& x) {
  require_same(s.algebra(), x.parent(), "evaluate_state");
  cplx v = 0.0;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    v += (s.density().block(k) * x.block(k)).trace();
  }
  return v;
}

AlgebraElement random_element(const BlockAlgebra& alg, std::uint64_t seed, ElementKind kind) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  for (int n : alg.block_dims()) {
    CMatrix g = rng.gaussian(n, n);
    switch (kind) {
      case ElementKind::General:
        break;
      case ElementKind::Hermitian:
        g = (0.5 * (g + g.adjoint())).eval();
        break;
      case ElementKind::Positive: {
        CMatrix p = g * g.adjoint();
        p = (0.5 * (p + p.adjoint())).eval();
        const double lmax = herm_eig(p).eigenvalues.maxCoeff();
        p += kPdThreshold * std::max(lmax, 1.0) * CMatrix::Identity(n, n);
        g = p;
        break;
      }
      case ElementKind::Unitary: {
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
        const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i) {
          const cplx d = r(i, i);
          const double a = std::abs(d);
          if (a > 0.0) q.col(i) *= d / a;
        }
        g = q;
        break;
      }
    }
    blocks.push_back(std::move(g));
  }
  return AlgebraElement(alg, std::move(blocks));
}

}  // namespace modmark
