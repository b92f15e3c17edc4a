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

#include <doctest.h>

#include "modmark/error.hpp"
#include "modmark/generators.hpp"
#include "modmark/gns.hpp"
#include "modmark/markov.hpp"
#include "modmark/random.hpp"
#include "test_util.hpp"

using namespace modmark;
using namespace modmark::testing;

namespace {

// Unital Kraus family on M_n from a random isometry n -> r n.
std::vector<CMatrix> random_kraus(int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.gaussian(r * n, n);
  const CMatrix v = Eigen::HouseholderQR<CMatrix>(g).householderQ() * CMatrix::Identity(r * n, n);
  std::vector<CMatrix> out;
  for (int i = 0; i < r; ++i) out.push_back(v.middleRows(i * n, n));
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no Error thrown");
  return ErrorCode::Malformed;
}

CMatrix half_schur() {
  CMatrix c(2, 2);
  c << 1.0, 0.5, 0.5, 1.0;
  return c;
}

}  // namespace

TEST_CASE("Kraus representations") {
  const FaithfulState s = qubit_state();
  const Channel id = channel_from_kraus({CMatrix::Identity(2, 2)}, s, s);
  CHECK((id.superop - CMatrix::Identity(4, 4)).norm() == 0.0);

  const Channel pinch = channel_from_kraus({unit(2, 1, 1), unit(2, 2, 2)}, s, s);
  CMatrix x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  CHECK(dist(apply(pinch, single(x)), single(diag({1.0, 4.0}))) == 0.0);
  const ChoiMatrix choi = to_choi(pinch);
  REQUIRE(choi.blocks.size() == 1);
  const auto ev = herm_eig(choi.blocks[0].matrix).eigenvalues;
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > 1e-12;
  CHECK(rank == 2);
  CHECK(code_of([&] { apply_kraus({}, s.algebra(), single(x)); }) == ErrorCode::EmptyKraus);
}

TEST_CASE("superop, Kraus and Choi forms agree") {
  const FaithfulState s = FaithfulState::tracial(BlockAlgebra({3}));
  const auto kraus = random_kraus(3, 3, 17);
  const Channel ch = channel_from_kraus(kraus, s, s);
  const ChoiMatrix choi = to_choi(ch);
  CHECK((channel_from_choi(choi, s, s).superop - ch.superop).norm() <= 1e-12);
  for (const auto& u : matrix_units(s.algebra())) {
    const AlgebraElement e = AlgebraElement::unit(s.algebra(), u);
    const AlgebraElement a = apply(ch, e);
    CHECK(dist(a, apply_kraus(kraus, s.algebra(), e)) <= 1e-12);
    CHECK(dist(a, apply_choi(choi, s.algebra(), e)) <= 1e-12);
  }
  CHECK(choi.min_eigenvalue() > -1e-12);
  CHECK(choi.hermiticity_residual() < 1e-12);
}

TEST_CASE("apply on simple channels") {
  const FaithfulState s = qubit_state();
  const AlgebraElement x = random_element(s.algebra(), 3, ElementKind::General);
  CHECK(dist(apply(identity_channel(s), x), x) == 0.0);

  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  const Channel scalar = state_to_scalar(s, m3);
  const AlgebraElement out = apply(scalar, single(unit(2, 1, 1)));
  CHECK(dist(out, (2.0 / 3.0) * AlgebraElement::identity(m3.algebra())) < 1e-15);
}

TEST_CASE("check_markov examples") {
  const FaithfulState s = qubit_state();
  const MarkovCheck id = check_markov(identity_channel(s));
  CHECK(id.all_ok());
  CHECK(id.unital_residual <= 1e-12);
  CHECK(id.state_residual <= 1e-12);
  CHECK(id.modular_residual <= 1e-12);
  CHECK(id.cp_min_eig >= -1e-12);

  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  const MarkovCheck sc = check_markov(state_to_scalar(s, m3));
  CHECK(sc.all_ok());
  CHECK(sc.modular_residual <= sc.modular_tol);

  // Pinching onto the Hadamard basis does not preserve D.
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const MarkovCheck hp = check_markov(basis_pinching(s, single(h)));
  CHECK(hp.unital_ok);
  CHECK(hp.cp_ok);
  CHECK(hp.state_residual > 0.01);
  CHECK_FALSE(hp.state_ok);
  // Oracle: Phi^dagger(D) - D computed directly, Phi(x) = sum P x P.
  CMatrix oracle = CMatrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k) {
    const CMatrix p = h.col(k) * h.col(k).adjoint();
    oracle += p * s.density().block(0) * p;
  }
  oracle -= s.density().block(0);
  CHECK(hp.state_residual == doctest::Approx(oracle.cwiseAbs().maxCoeff()));
  CHECK(hp.state_residual_basis > 0.01);
}

TEST_CASE("check_markov flags non-cp and non-unital maps without throwing") {
  const FaithfulState s = qubit_state();
  // Transpose is positive but not completely positive.
  const Channel tr = channel_from_function(s, s, [](const AlgebraElement& x) {
    return single(x.block(0).transpose());
  });
  const MarkovCheck t = check_markov(tr);
  CHECK_FALSE(t.cp_ok);
  CHECK(t.cp_min_eig == doctest::Approx(-1.0));
  const Channel half(s, s, 0.5 * CMatrix::Identity(4, 4));
  CHECK_FALSE(check_markov(half).unital_ok);
  CHECK_FALSE(check_markov(half).all_ok());
}

TEST_CASE("trace dual pairing") {
  const FaithfulState s = qubit_state();
  CHECK((trace_dual(identity_channel(s)).superop - CMatrix::Identity(4, 4)).norm() == 0.0);
  const Channel pinch = channel_from_kraus({unit(2, 1, 1), unit(2, 2, 2)}, s, s);
  CHECK((trace_dual(pinch).superop - pinch.superop).norm() == 0.0);

  const FaithfulState t3 = FaithfulState::tracial(BlockAlgebra({3}));
  const Channel ch = channel_from_kraus(random_kraus(3, 2, 5), t3, t3);
  const Channel dual = trace_dual(ch);
  double worst = 0.0;
  for (const auto& u : matrix_units(t3.algebra())) {
    for (const auto& v : matrix_units(t3.algebra())) {
      const CMatrix x = AlgebraElement::unit(t3.algebra(), u).block(0);
      const CMatrix y = AlgebraElement::unit(t3.algebra(), v).block(0);
      const cplx lhs = (y.adjoint() * apply(ch, single(x)).block(0)).trace();
      const cplx rhs = (apply(dual, single(y)).block(0).adjoint() * x).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("state adjoint examples") {
  const FaithfulState s = qubit_state();
  CHECK((ac_adjoint(identity_channel(s)).superop - CMatrix::Identity(4, 4)).norm() < 1e-14);

  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  const Channel adj = ac_adjoint(state_to_scalar(s, m3));
  CHECK((adj.superop - state_to_scalar(m3, s).superop).norm() < 1e-14);

  const Channel schur = schur_channel(s, half_schur());
  const Channel sadj = ac_adjoint(schur);
  CHECK((sadj.superop - schur.superop).norm() < 1e-14);
  // Defining pairing rho(Phi*(y) x) = phi(y Phi(x)) on all units.
  for (const auto& u : matrix_units(s.algebra())) {
    for (const auto& v : matrix_units(s.algebra())) {
      const AlgebraElement x = AlgebraElement::unit(s.algebra(), u);
      const AlgebraElement y = AlgebraElement::unit(s.algebra(), v);
      CHECK(std::abs(evaluate_state(s, apply(sadj, y) * x) -
                     evaluate_state(s, y * apply(schur, x))) < 1e-14);
    }
  }
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  const Channel hadamard = basis_pinching(s, single(h / std::sqrt(2.0)));
  CHECK(code_of([&] { ac_adjoint(hadamard); }) == ErrorCode::NotStatePreserving);
}

TEST_CASE("adjoint involution, contravariance and Petz form") {
  const Channel f = generate(GenSpec{GenKind::Twirl, {2, 2}, 3, {}}).channel;
  const FaithfulState& s = f.source;
  const Channel g = schur_channel(s, std::vector<CMatrix>{half_schur(), CMatrix::Ones(2, 2)});
  const Channel ff = ac_adjoint(ac_adjoint(f));
  CHECK((ff.superop - f.superop).norm() <= 1e-10);
  const Channel lhs = ac_adjoint(compose(f, g));
  const Channel rhs = compose(ac_adjoint(g), ac_adjoint(f));
  CHECK((lhs.superop - rhs.superop).norm() <= 1e-10);
  CHECK((petz_adjoint(f).superop - ac_adjoint(f).superop).norm() <= 1e-10);
}

TEST_CASE("L2 extension examples") {
  const FaithfulState s = qubit_state();
  CHECK((l2_matrix(identity_channel(s)) - CMatrix::Identity(4, 4)).norm() < 1e-14);

  const CMatrix t = l2_extension(schur_channel(s, half_schur())).matrix;
  CMatrix expect = CMatrix::Zero(4, 4);
  expect.diagonal() << 1.0, 0.5, 0.5, 1.0;
  CHECK((t - expect).norm() < 1e-14);

  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  const CMatrix ts = l2_matrix(state_to_scalar(s, m3));
  const CMatrix rank_one = ModularData(m3).omega().coords() * ModularData(s).omega().coords().adjoint();
  CHECK((ts - rank_one).norm() < 1e-14);

  const Channel half(s, s, 0.5 * CMatrix::Identity(4, 4));
  CHECK(code_of([&] { l2_extension(half); }) == ErrorCode::NotMarkov);
}

TEST_CASE("Kadison bound for u.c.p. state-preserving maps") {
  for (GenKind kind : {GenKind::Schur, GenKind::Pinch, GenKind::Twirl, GenKind::SpUcp,
                       GenKind::Convex, GenKind::Automorphism}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Instance inst = generate(GenSpec{kind, {3}, seed, {}});
      const CMatrix t = l2_extension(inst.channel).matrix;
      CHECK(op_norm(t) <= 1.0 + 1e-10);
      const CVector omega_out = t * ModularData(inst.channel.source).omega().coords();
      CHECK((omega_out - ModularData(inst.channel.target).omega().coords()).norm() <= 1e-10);
    }
  }
}

TEST_CASE("composition and tensor products") {
  const FaithfulState s = qubit_state();
  const Channel g = schur_channel(s, half_schur());
  CHECK((compose(identity_channel(s), g).superop - g.superop).norm() == 0.0);

  const Channel pinch = schur_channel(s, CMatrix::Identity(2, 2));
  const Channel fg = compose(g, pinch);
  CHECK((l2_matrix(fg) - l2_matrix(g) * l2_matrix(pinch)).norm() <= 1e-10);

  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  CHECK(code_of([&] { compose(state_to_scalar(s, m3), state_to_scalar(s, m3)); }) ==
        ErrorCode::ShapeMismatch);

  const FaithfulState a = random_faithful_state(BlockAlgebra({2, 1}), 1, 0.1);
  const FaithfulState b = random_faithful_state(BlockAlgebra({2}), 2, 0.1);
  const Channel prod = tensor(state_to_scalar(s, a), state_to_scalar(m3, b));
  const Channel direct = state_to_scalar(tensor(s, m3), tensor(a, b));
  CHECK((prod.superop - direct.superop).norm() < 1e-14);
  CHECK(tensor(BlockAlgebra({2, 1}), BlockAlgebra({3})).block_dims() == std::vector<int>{6, 3});
}
