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

#include <algorithm>
#include <set>

#include "modmark/error.hpp"
#include "modmark/generators.hpp"
#include "modmark/io.hpp"
#include "modmark/markov.hpp"
#include "modmark/verify.hpp"
#include "test_util.hpp"

using namespace modmark;
using namespace modmark::testing;

namespace {

Channel half_schur_channel() {
  CMatrix c(2, 2);
  c << 1.0, 0.5, 0.5, 1.0;
  return schur_channel(qubit_state(), c);
}

Channel negative_instance() { return sp_ucp(qubit_state(), qubit_state(), 11).channel; }

}  // namespace

TEST_CASE("sample sets") {
  const auto t = default_t_samples();
  REQUIRE(t.size() == 8);
  const std::vector<double> head{1.0, -1.0, 0.37, -0.37, 5.0, -5.0};
  CHECK(std::equal(head.begin(), head.end(), t.begin()));
  for (double v : t) CHECK(std::abs(v) <= 5.0);

  const auto z = default_z_samples();
  REQUIRE(z.size() == 16);
  std::set<std::pair<double, double>> distinct;
  for (cplx v : z) {
    CHECK(std::abs(v.real()) <= 1.0);
    CHECK(std::abs(v.imag()) <= 5.0);
    distinct.insert({v.real(), v.imag()});
  }
  CHECK(distinct.size() == 16);

  const auto s = s_samples();
  CHECK(s == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
}

TEST_CASE("identity channel verifies to roundoff") {
  const VerificationReport rep = verify_instance(identity_channel(qubit_state()), VerifyConfig{});
  CHECK(rep.all_pass());
  for (const auto& [key, v] : rep.residuals) {
    CAPTURE(key);
    CHECK(v <= 1e-13);
  }
  CHECK(rep.residuals.size() == 14);
  CHECK(rep.residuals.size() == rep.verdicts.size());
  CHECK(rep.residuals.size() == rep.tolerances.size());
}

TEST_CASE("Schur example") {
  const Channel ch = half_schur_channel();
  const std::vector<double> ts{1.0, -1.0, 0.37, 5.0};
  CHECK(verify_crucial(ch, ts) <= 1e-12);
  const std::vector<cplx> zs{{0.5, 2.0}};
  const std::vector<double> ss{-1.0, 1.0};
  const CommuteResult c = verify_commute(ch, zs, ss);
  CHECK(c.thm_commute_z <= 1e-12 * 2.0);
  CHECK(c.thm_i_s <= 1e-12 * 2.0);
  const SymmetryResult sym = verify_modular_symmetry(ch);
  CHECK(sym.thm_ii <= 1e-12);
  CHECK(sym.thm_iii <= 1e-12);
}

TEST_CASE("imaginary powers agree with the crucial identity") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Channel ch = generate(GenSpec{GenKind::Convex, {3}, seed, {}}).channel;
    for (double t : {-5.0, 0.37, 1.0}) {
      const std::vector<double> ts{t};
      const std::vector<cplx> zs{{0.0, t}};
      const std::vector<double> none{0.0};
      CHECK(std::abs(verify_commute(ch, zs, none).thm_commute_z - verify_crucial(ch, ts)) <= 1e-12);
    }
  }
}

TEST_CASE("state to scalar commutes with every complex power") {
  const FaithfulState m3(single(diag({0.5, 0.3, 0.2})));
  const Channel ch = state_to_scalar(qubit_state(), m3);
  const auto zs = default_z_samples();
  const CommuteResult c = verify_commute(ch, zs, s_samples());
  CHECK(c.thm_commute_z <= 1e-12);
  const AdjointResult a = verify_adjoint(ch);
  CHECK(a.adjoint_consistency <= 1e-12);
  CHECK(a.petz_match <= 1e-12);
  CHECK(a.kadison_norm <= 1e-12);
}

TEST_CASE("twirled channels satisfy the adjoint identities") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Channel ch = generate(GenSpec{GenKind::Twirl, {2, 2}, seed, {}}).channel;
    const AdjointResult a = verify_adjoint(ch);
    CHECK(a.adjoint_consistency <= 1e-9);
    CHECK(a.petz_match <= 1e-9);
    CHECK(a.kadison_norm <= 1e-10);
  }
}

TEST_CASE("negative instance fails the modular checks") {
  const Channel ch = negative_instance();
  const std::vector<double> ts{1.0, -1.0, 0.37, 5.0};
  CHECK(verify_crucial(ch, ts) > 1e-3);
  CHECK(verify_modular_symmetry(ch).thm_ii > 1e-3);
  const VerificationReport rep = verify_instance(ch, VerifyConfig{});
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.verdicts.at("thm_ii"));
  CHECK_FALSE(rep.verdicts.at("markov_modular"));
  for (const auto& key : hypothesis_free_checks()) {
    CAPTURE(key);
    CHECK(rep.verdicts.at(key));
  }
  // Without a generator spec the failure is not marked as expected.
  CHECK_FALSE(rep.expected_failure);
  CHECK_FALSE(rep.unexpected_failures().empty());

  GenSpec spec{GenKind::SpUcp, {2}, 11, {}};
  const VerificationReport tagged = verify_instance(ch, VerifyConfig{}, "neg", 11, spec);
  CHECK(tagged.expected_failure);
  CHECK(tagged.unexpected_failures().empty());
}

TEST_CASE("checks reject maps outside the hypotheses") {
  const FaithfulState s = qubit_state();
  const Channel half(s, s, 0.5 * CMatrix::Identity(4, 4));
  const std::vector<double> ts{1.0};
  try {
    verify_crucial(half, ts);
    FAIL("expected NotMarkov");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMarkov);
  }
  CHECK_THROWS_AS(verify_modular_symmetry(half), Error);
  // The report still runs and marks the failure.
  const VerificationReport rep = verify_instance(half, VerifyConfig{});
  CHECK_FALSE(rep.verdicts.at("markov_unital"));
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("error propagation stays within a bounded factor") {
  SuiteConfig cfg;
  cfg.trials = 40;
  cfg.seed = 3;
  cfg.dims = {{2}, {3}, {2, 2}, {3, 1}};
  cfg.kinds = {GenKind::Schur, GenKind::Pinch, GenKind::Twirl, GenKind::Convex,
               GenKind::Automorphism};
  const SuiteResult res = run_suite(cfg);
  for (const auto& rep : res.reports) {
    const double tau = std::max(rep.tolerances.at("markov_modular"), 1e-16);
    CHECK(rep.residuals.at("thm_ii") <= 100.0 * tau);
    CHECK(rep.residuals.at("eq32_t") <= 100.0 * tau);
  }
}

TEST_CASE("suites") {
  SuiteConfig one;
  one.dims = {{2}};
  const SuiteResult r1 = run_suite(one);
  CHECK(r1.summary.total == 1);
  CHECK(r1.summary.passed == 1);
  CHECK(r1.reports.front().instance_id == "trial-00000");

  SuiteConfig neg;
  neg.trials = 5;
  neg.kinds = {GenKind::SpUcp};
  const SuiteResult rn = run_suite(neg);
  CHECK(rn.summary.unexpected_failures == 0);
  CHECK(rn.summary.expected_failures == 5);
  CHECK(rn.summary.expected_max_residuals.at("thm_ii") > 1e-6);

  SuiteConfig cfg;
  cfg.trials = 24;
  cfg.seed = 42;
  cfg.kinds = {GenKind::Schur, GenKind::Pinch, GenKind::Twirl, GenKind::StateToScalar,
               GenKind::Automorphism, GenKind::Convex};
  const std::string a = io::dump(io::to_json(run_suite(cfg)));
  const std::string b = io::dump(io::to_json(run_suite(cfg)));
  CHECK(a == b);
  const SuiteResult rc = run_suite(cfg);
  CHECK(rc.summary.unexpected_failures == 0);
  CHECK(rc.summary.passed == 24);
}

TEST_CASE("suite trial layout") {
  SuiteConfig cfg;
  cfg.dims = {{2}, {3}};
  cfg.kinds = {GenKind::Schur, GenKind::StateToScalar};
  cfg.seed = 9;
  const GenSpec s0 = suite_spec(cfg, 0);
  const GenSpec s1 = suite_spec(cfg, 1);
  const GenSpec s2 = suite_spec(cfg, 2);
  CHECK(s0.kind == GenKind::Schur);
  CHECK(s1.kind == GenKind::StateToScalar);
  CHECK(s2.dims == std::vector<int>{3});
  CHECK(s0.seed != s2.seed);
  REQUIRE(s1.params.target_dims.has_value());
  CHECK(*s1.params.target_dims == std::vector<int>{3});
}
