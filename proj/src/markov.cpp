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

#include "modmark/markov.hpp"

#include <algorithm>
#include <cmath>

#include "modmark/error.hpp"

namespace modmark {

namespace {

// Largest column norm: the worst residual over the matrix-unit basis.
double max_column_norm(const CMatrix& m) {
  double r = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) r = std::max(r, m.col(c).norm());
  return r;
}

CMatrix ad_matrix(const BlockAlgebra& alg, const std::vector<CMatrix>& h) {
  return left_mult_matrix(alg, h) - right_mult_matrix(alg, h);
}

double max_abs_log(const ModularData& md) {
  double r = 0.0;
  for (const auto& e : md.d_eig()) {
    r = std::max(r, e.eigenvalues.array().log().abs().maxCoeff());
  }
  return r;
}

}  // namespace

Channel::Channel(FaithfulState src, FaithfulState tgt, CMatrix s)
    : source(std::move(src)), target(std::move(tgt)), superop(std::move(s)) {
  if (superop.rows() != target.algebra().hs_dim() || superop.cols() != source.algebra().hs_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "superoperator shape does not match source/target");
  }
  if (!all_finite(superop)) throw Error(ErrorCode::ShapeMismatch, "non-finite superoperator");
}

Channel channel_from_superop(const FaithfulState& source, const FaithfulState& target,
                             const CMatrix& superop) {
  return Channel(source, target, superop);
}

Channel channel_from_function(const FaithfulState& source, const FaithfulState& target,
                              const std::function<AlgebraElement(const AlgebraElement&)>& fn) {
  const BlockAlgebra& n = source.algebra();
  CMatrix s(target.algebra().hs_dim(), n.hs_dim());
  Eigen::Index c = 0;
  for (const auto& e : matrix_units(n)) {
    const AlgebraElement y = fn(AlgebraElement::unit(n, e));
    require_same(y.parent(), target.algebra(), "channel_from_function");
    s.col(c++) = y.coords();
  }
  return Channel(source, target, s);
}

AlgebraElement apply_kraus(const std::vector<CMatrix>& kraus, const BlockAlgebra& target,
                           const AlgebraElement& x) {
  if (kraus.empty()) throw Error(ErrorCode::EmptyKraus, "Kraus list is empty");
  const CMatrix xm = x.as_matrix();
  CMatrix acc = CMatrix::Zero(target.matrix_dim(), target.matrix_dim());
  for (const auto& k : kraus) {
    if (k.rows() != x.parent().matrix_dim() || k.cols() != target.matrix_dim()) {
      throw Error(ErrorCode::ShapeMismatch, "Kraus operator shape");
    }
    acc += k.adjoint() * xm * k;
  }
  return AlgebraElement::compress(target, acc);
}

Channel channel_from_kraus(const std::vector<CMatrix>& kraus, const FaithfulState& source,
                           const FaithfulState& target) {
  if (kraus.empty()) throw Error(ErrorCode::EmptyKraus, "Kraus list is empty");
  const BlockAlgebra tgt = target.algebra();
  return channel_from_function(source, target, [&](const AlgebraElement& x) {
    return apply_kraus(kraus, tgt, x);
  });
}

AlgebraElement apply(const Channel& ch, const AlgebraElement& x) {
  require_same(ch.source.algebra(), x.parent(), "apply");
  return AlgebraElement::from_coords(ch.target.algebra(), ch.superop * x.coords());
}

double ChoiMatrix::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    const CMatrix h = 0.5 * (b.matrix + b.matrix.adjoint());
    m = std::min(m, herm_eig(h).eigenvalues.minCoeff());
  }
  return m;
}

double ChoiMatrix::hermiticity_residual() const {
  double r = 0.0;
  for (const auto& b : blocks) r = std::max(r, modmark::hermiticity_residual(b.matrix));
  return r;
}

ChoiMatrix to_choi(const Channel& ch) {
  const BlockAlgebra& src = ch.source.algebra();
  const BlockAlgebra& tgt = ch.target.algebra();
  ChoiMatrix out;
  for (std::size_t k = 0; k < src.num_blocks(); ++k) {
    const int n = src.block_dim(k);
    for (std::size_t j = 0; j < tgt.num_blocks(); ++j) {
      const int m = tgt.block_dim(j);
      CMatrix c(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q)
              c(p * n + a, q * n + b) =
                  ch.superop(tgt.hs_offset(j) + p + q * m, src.hs_offset(k) + a + b * n);
      out.blocks.push_back({k, j, std::move(c)});
    }
  }
  return out;
}

Channel channel_from_choi(const ChoiMatrix& choi, const FaithfulState& source,
                          const FaithfulState& target) {
  const BlockAlgebra& src = source.algebra();
  const BlockAlgebra& tgt = target.algebra();
  if (choi.blocks.size() != src.num_blocks() * tgt.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "Choi block count");
  }
  CMatrix s = CMatrix::Zero(tgt.hs_dim(), src.hs_dim());
  for (const auto& blk : choi.blocks) {
    const int n = src.block_dim(blk.source_block);
    const int m = tgt.block_dim(blk.target_block);
    if (blk.matrix.rows() != m * n || blk.matrix.cols() != m * n) {
      throw Error(ErrorCode::ShapeMismatch, "Choi block shape");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q)
            s(tgt.hs_offset(blk.target_block) + p + q * m, src.hs_offset(blk.source_block) + a + b * n) =
                blk.matrix(p * n + a, q * n + b);
  }
  return Channel(source, target, s);
}

AlgebraElement apply_choi(const ChoiMatrix& choi, const BlockAlgebra& target,
                          const AlgebraElement& x) {
  const BlockAlgebra& src = x.parent();
  AlgebraElement y = AlgebraElement::zero(target);
  for (const auto& blk : choi.blocks) {
    const int n = src.block_dim(blk.source_block);
    const int m = target.block_dim(blk.target_block);
    const CMatrix& xk = x.block(blk.source_block);
    CMatrix& yj = y.block(blk.target_block);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) yj(p, q) += xk(a, b) * blk.matrix(p * n + a, q * n + b);
  }
  return y;
}

MarkovCheck check_markov(const Channel& ch, const Tolerance& tol) {
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  const BlockAlgebra& n = ch.source.algebra();
  const BlockAlgebra& m = ch.target.algebra();
  MarkovCheck r;

  r.unital_residual =
      (apply(ch, AlgebraElement::identity(n)) - AlgebraElement::identity(m)).norm();
  const ChoiMatrix choi = to_choi(ch);
  r.cp_min_eig = choi.min_eigenvalue();
  r.choi_hermiticity = choi.hermiticity_residual();

  const CVector dual_dm = ch.superop.adjoint() * ch.target.density().coords();
  r.state_residual = (dual_dm - ch.source.density().coords()).cwiseAbs().maxCoeff();
  for (const auto& e : matrix_units(n)) {
    const AlgebraElement u = AlgebraElement::unit(n, e);
    const cplx d = evaluate_state(ch.target, apply(ch, u)) - evaluate_state(ch.source, u);
    r.state_residual_basis = std::max(r.state_residual_basis, std::abs(d));
  }

  const CMatrix gen = ch.superop * ad_matrix(n, mn.log_density()) -
                      ad_matrix(m, mm.log_density()) * ch.superop;
  r.modular_generator_residual = max_column_norm(gen);
  for (double t : {1.0, -1.0, 0.37, -0.37, 5.0}) {
    const CMatrix d = ch.superop * delta_matrix(mn, cplx(0.0, t)) -
                      delta_matrix(mm, cplx(0.0, t)) * ch.superop;
    r.modular_sampled_residual = std::max(r.modular_sampled_residual, max_column_norm(d));
  }
  r.modular_residual = std::max(r.modular_generator_residual, r.modular_sampled_residual);

  r.unital_tol = tol.effective();
  r.cp_tol = tol.effective();
  r.state_tol = tol.effective();
  r.modular_tol = tol.effective(std::max(max_abs_log(mn), max_abs_log(mm)));
  r.unital_ok = r.unital_residual <= r.unital_tol;
  r.cp_ok = r.cp_min_eig >= -r.cp_tol && r.choi_hermiticity <= r.cp_tol;
  r.state_ok = r.state_residual <= r.state_tol;
  r.modular_ok = r.modular_residual <= r.modular_tol;
  return r;
}

Channel trace_dual(const Channel& ch) {
  return Channel(ch.target, ch.source, ch.superop.adjoint());
}

Channel ac_adjoint(const Channel& ch, const Tolerance& tol) {
  const MarkovCheck chk = check_markov(ch, tol);
  if (!chk.state_ok) {
    throw Error(ErrorCode::NotStatePreserving,
                "state residual " + std::to_string(chk.state_residual));
  }
  const ModularData mn(ch.source);
  const BlockAlgebra& n = ch.source.algebra();
  const BlockAlgebra& m = ch.target.algebra();
  const CMatrix s = left_mult_matrix(n, mn.density_power(-1.0)) * ch.superop.adjoint() *
                    left_mult_matrix(m, ch.target.density().blocks());
  return Channel(ch.target, ch.source, s);
}

Channel petz_adjoint(const Channel& ch) {
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  const BlockAlgebra& n = ch.source.algebra();
  const BlockAlgebra& m = ch.target.algebra();
  const CMatrix s = left_mult_matrix(n, mn.inv_sqrt_density()) *
                    right_mult_matrix(n, mn.inv_sqrt_density()) * ch.superop.adjoint() *
                    left_mult_matrix(m, mm.sqrt_density()) * right_mult_matrix(m, mm.sqrt_density());
  return Channel(ch.target, ch.source, s);
}

CMatrix l2_matrix(const Channel& ch) {
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  return right_mult_matrix(ch.target.algebra(), mm.sqrt_density()) * ch.superop *
         right_mult_matrix(ch.source.algebra(), mn.inv_sqrt_density());
}

L2Extension l2_extension(const Channel& ch, const Tolerance& tol) {
  const MarkovCheck chk = check_markov(ch, tol);
  if (!chk.ucp_state_ok()) {
    throw Error(ErrorCode::NotMarkov, "L2 extension needs a unital, cp, state-preserving map");
  }
  return L2Extension{l2_matrix(ch)};
}

Channel compose(const Channel& f, const Channel& g) {
  if (!approx_equal(f.source, g.target)) {
    throw Error(ErrorCode::ShapeMismatch, "compose: f.source must equal g.target");
  }
  return Channel(g.source, f.target, f.superop * g.superop);
}

BlockAlgebra tensor(const BlockAlgebra& a, const BlockAlgebra& b) {
  std::vector<int> dims;
  for (int n : a.block_dims())
    for (int m : b.block_dims()) dims.push_back(n * m);
  return BlockAlgebra(dims);
}

AlgebraElement tensor(const AlgebraElement& x, const AlgebraElement& y) {
  std::vector<CMatrix> blocks;
  for (const auto& bx : x.blocks())
    for (const auto& by : y.blocks()) blocks.push_back(kron(bx, by));
  return AlgebraElement(tensor(x.parent(), y.parent()), std::move(blocks));
}

FaithfulState tensor(const FaithfulState& a, const FaithfulState& b) {
  return FaithfulState::normalized(tensor(a.density(), b.density()));
}

Channel tensor(const Channel& f, const Channel& g) {
  const BlockAlgebra& n1 = f.source.algebra();
  const BlockAlgebra& n2 = g.source.algebra();
  const FaithfulState src = tensor(f.source, g.source);
  const FaithfulState tgt = tensor(f.target, g.target);
  CMatrix s(tgt.algebra().hs_dim(), src.algebra().hs_dim());
  // Product block (k, l) has dimension n_k * n'_l with index a * n'_l + a'.
  Eigen::Index col_base = 0;
  for (std::size_t k = 0; k < n1.num_blocks(); ++k) {
    for (std::size_t l = 0; l < n2.num_blocks(); ++l) {
      const int nk = n1.block_dim(k);
      const int nl = n2.block_dim(l);
      const int d = nk * nl;
      for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
          const int a = r / nl, ap = r % nl, b = c / nl, bp = c % nl;
          const AlgebraElement fx = apply(f, AlgebraElement::unit(n1, {k, a, b}));
          const AlgebraElement gy = apply(g, AlgebraElement::unit(n2, {l, ap, bp}));
          s.col(col_base + r + static_cast<Eigen::Index>(c) * d) = tensor(fx, gy).coords();
        }
      }
      col_base += static_cast<Eigen::Index>(d) * d;
    }
  }
  return Channel(src, tgt, s);
}

}  // namespace modmark
