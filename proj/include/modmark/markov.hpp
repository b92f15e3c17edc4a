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

#ifndef MODMARK_MARKOV_HPP
#define MODMARK_MARKOV_HPP

#include <functional>
#include <vector>

#include "modmark/algebra.hpp"
#include "modmark/gns.hpp"

namespace modmark {

// Linear map Phi: N -> M between block algebras carried as a superoperator on
// Hilbert-Schmidt coordinates: coords(Phi(x)) = superop * coords(x).
// Orientation is fixed throughout: source (N, rho), target (M, phi), and the
// modular condition reads Phi o sigma^rho_t = sigma^phi_t o Phi.
struct Channel {
  Channel(FaithfulState source, FaithfulState target, CMatrix superop);

  FaithfulState source;
  FaithfulState target;
  CMatrix superop;  // target.hs_dim() x source.hs_dim()
};

Channel channel_from_superop(const FaithfulState& source, const FaithfulState& target,
                             const CMatrix& superop);
// Heisenberg-picture Kraus form Phi(x) = P_M(sum_i K_i^H x K_i), where each
// K_i is (sum n_k) x (sum m_j) and P_M keeps the diagonal blocks of M.
Channel channel_from_kraus(const std::vector<CMatrix>& kraus, const FaithfulState& source,
                           const FaithfulState& target);
// Superoperator of an arbitrary linear function, sampled on matrix units.
Channel channel_from_function(const FaithfulState& source, const FaithfulState& target,
                              const std::function<AlgebraElement(const AlgebraElement&)>& fn);

AlgebraElement apply(const Channel& ch, const AlgebraElement& x);
AlgebraElement apply_kraus(const std::vector<CMatrix>& kraus, const BlockAlgebra& target,
                           const AlgebraElement& x);

// Choi blocks C_{kj} = sum_{ab} Phi(E^k_ab)_j (x) E_ab, one per
// (source block k, target block j); Phi is CP iff every block is psd.
struct ChoiBlock {
  std::size_t source_block;
  std::size_t target_block;
  CMatrix matrix;  // (m_j n_k) x (m_j n_k), index p * n_k + a
};

struct ChoiMatrix {
  std::vector<ChoiBlock> blocks;

  // Of the Hermitian part of each block.
  double min_eigenvalue() const;
  double hermiticity_residual() const;
};

ChoiMatrix to_choi(const Channel& ch);
Channel channel_from_choi(const ChoiMatrix& choi, const FaithfulState& source,
                          const FaithfulState& target);
AlgebraElement apply_choi(const ChoiMatrix& choi, const BlockAlgebra& target,
                          const AlgebraElement& x);

struct MarkovCheck {
  double unital_residual = 0.0;      // ||Phi(1) - 1||_F
  double cp_min_eig = 0.0;           // min eigenvalue over Choi blocks
  double choi_hermiticity = 0.0;     // max ||C - C^H||_F over Choi blocks
  double state_residual = 0.0;       // max |entry| of Phi^dagger(D_M) - D_N
  double state_residual_basis = 0.0; // max over units |phi(Phi(E)) - rho(E)|
  double modular_generator_residual = 0.0;
  double modular_sampled_residual = 0.0;
  double modular_residual = 0.0;     // max of the two above

  double unital_tol = 0.0;
  double cp_tol = 0.0;
  double state_tol = 0.0;
  double modular_tol = 0.0;

  bool unital_ok = false;
  bool cp_ok = false;
  bool state_ok = false;
  bool modular_ok = false;

  // Hypotheses of the L^2 bound: u.c.p. and state preserving.
  bool ucp_state_ok() const { return unital_ok && cp_ok && state_ok; }
  bool all_ok() const { return ucp_state_ok() && modular_ok; }
};

// Reports residuals; never throws on a failing instance.
MarkovCheck check_markov(const Channel& ch, const Tolerance& tol = {});

// Hilbert-Schmidt dual: Tr(y^H Phi(x)) = Tr(dual(y)^H x). Source and target
// states are swapped.
Channel trace_dual(const Channel& ch);

// Phi*(y) = D_N^{-1} Phi^dagger(D_M y): rho(Phi*(y) x) = phi(y Phi(x)).
// Throws NotStatePreserving.
Channel ac_adjoint(const Channel& ch, const Tolerance& tol = {});
// D_N^{-1/2} Phi^dagger(D_M^{1/2} y D_M^{1/2}) D_N^{-1/2}.
Channel petz_adjoint(const Channel& ch);

struct L2Extension {
  CMatrix matrix;  // L^2(N, rho) coords -> L^2(M, phi) coords
};

// T(xi) = Phi(xi D_N^{-1/2}) D_M^{1/2} without precondition checks.
CMatrix l2_matrix(const Channel& ch);
// Throws NotMarkov unless unital, cp and state preserving.
L2Extension l2_extension(const Channel& ch, const Tolerance& tol = {});

// f o g; requires f.source == g.target.
Channel compose(const Channel& f, const Channel& g);

BlockAlgebra tensor(const BlockAlgebra& a, const BlockAlgebra& b);
AlgebraElement tensor(const AlgebraElement& x, const AlgebraElement& y);
FaithfulState tensor(const FaithfulState& a, const FaithfulState& b);
Channel tensor(const Channel& f, const Channel& g);

}  // namespace modmark

#endif  // MODMARK_MARKOV_HPP
