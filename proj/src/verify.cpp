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

#include "modmark/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>

#include "modmark/error.hpp"
#include "modmark/random.hpp"

namespace modmark {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kSilver = 0.4142135623730950;

double frac(double x) { return x - std::floor(x); }

void require_l2_hypotheses(const Channel& ch, const Tolerance& tol) {
  const MarkovCheck chk = check_markov(ch, tol);
  if (!chk.ucp_state_ok()) {
    throw Error(ErrorCode::NotMarkov, "needs a unital, cp, state-preserving map");
  }
}

// Matrix of the linear map xi -> J_phi T J_rho xi.
CMatrix conjugate_by_j(const Channel& ch, const CMatrix& t) {
  return swap_matrix(ch.target.algebra()) * t.conjugate() * swap_matrix(ch.source.algebra());
}

double crucial_residual(const CMatrix& t, const ModularData& mn, const ModularData& mm,
                        std::span<const double> ts) {
  double r = 0.0;
  for (double s : ts) {
    const cplx z(0.0, s);
    r = std::max(r, op_norm(t * delta_matrix(mn, z) - delta_matrix(mm, z) * t));
  }
  return r;
}

CommuteResult commute_residuals(const CMatrix& t, const ModularData& mn, const ModularData& mm,
                                std::span<const cplx> zs, std::span<const double> ss) {
  CommuteResult r;
  for (cplx z : zs) {
    r.thm_commute_z = std::max(r.thm_commute_z, op_norm(t * delta_matrix(mn, z) - delta_matrix(mm, z) * t));
  }
  for (double s : ss) {
    r.thm_i_s = std::max(r.thm_i_s, op_norm(delta_matrix(mm, -s) * t * delta_matrix(mn, s) - t));
  }
  return r;
}

SymmetryResult symmetry_residuals(const Channel& ch, const CMatrix& t, const ModularData& mn,
                                  const ModularData& mm) {
  SymmetryResult r;
  r.thm_ii = op_norm(conjugate_by_j(ch, t) - t);
  const BlockAlgebra& n = ch.source.algebra();
  const BlockAlgebra& m = ch.target.algebra();
  for (const auto& e : matrix_units(n)) {
    const GnsVector xi = embed(mn, AlgebraElement::unit(n, e));
    const GnsVector s_xi = apply_S(mn, xi);
    const GnsVector t_s_xi = GnsVector::from_coords(m, t * s_xi.coords());
    const GnsVector lhs = apply_S(mm, t_s_xi);
    const GnsVector rhs = GnsVector::from_coords(m, t * xi.coords());
    r.thm_iii = std::max(r.thm_iii, (lhs - rhs).norm());
  }
  return r;
}

AdjointResult adjoint_residuals(const Channel& ch, const CMatrix& t) {
  AdjointResult r;
  // The asymmetric adjoint formula only needs D_N invertible; build it
  // without the state-preservation gate so failing instances still report.
  const ModularData mn(ch.source);
  const CMatrix ac = left_mult_matrix(ch.source.algebra(), mn.density_power(-1.0)) *
                     ch.superop.adjoint() *
                     left_mult_matrix(ch.target.algebra(), ch.target.density().blocks());
  const Channel star(ch.target, ch.source, ac);
  r.adjoint_consistency = op_norm(t.adjoint() - l2_matrix(star));
  r.petz_match = op_norm(ac - petz_adjoint(ch).superop);
  r.kadison_norm = std::max(0.0, op_norm(t) - 1.0);
  return r;
}

}  // namespace

std::vector<double> default_t_samples(int n) {
  std::vector<double> base{1.0, -1.0, 0.37, -0.37, 5.0, -5.0};
  if (n <= static_cast<int>(base.size())) {
    base.resize(static_cast<std::size_t>(std::max(n, 0)));
    return base;
  }
  for (int k = 1; static_cast<int>(base.size()) < n; ++k) {
    base.push_back(-5.0 + 10.0 * frac(k * kGolden));
  }
  return base;
}

std::vector<cplx> default_z_samples(int n, double re_max, double im_max) {
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) {
    const double re = -re_max + 2.0 * re_max * frac(0.5 + k * kGolden);
    const double im = -im_max + 2.0 * im_max * frac(0.25 + k * kSilver);
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<double> s_samples(double a, double b) {
  std::vector<double> out;
  for (int k = 0; k < 5; ++k) out.push_back(a + (b - a) * k / 4.0);
  return out;
}

double verify_crucial(const Channel& ch, std::span<const double> t_samples, const Tolerance& tol) {
  require_l2_hypotheses(ch, tol);
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  return crucial_residual(l2_matrix(ch), mn, mm, t_samples);
}

CommuteResult verify_commute(const Channel& ch, std::span<const cplx> z_samples,
                             std::span<const double> s_samples, const Tolerance& tol,
                             double z_max) {
  require_l2_hypotheses(ch, tol);
  const ModularData mn(ch.source, z_max);
  const ModularData mm(ch.target, z_max);
  return commute_residuals(l2_matrix(ch), mn, mm, z_samples, s_samples);
}

SymmetryResult verify_modular_symmetry(const Channel& ch, const Tolerance& tol) {
  require_l2_hypotheses(ch, tol);
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  return symmetry_residuals(ch, l2_matrix(ch), mn, mm);
}

AdjointResult verify_adjoint(const Channel& ch, const Tolerance& tol) {
  require_l2_hypotheses(ch, tol);
  return adjoint_residuals(ch, l2_matrix(ch));
}

bool VerificationReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, ok] : verdicts) {
    if (!ok) out.push_back(name);
  }
  return out;
}

const std::vector<std::string>& hypothesis_free_checks() {
  static const std::vector<std::string> names{"markov_unital", "markov_cp",   "markov_state",
                                              "kadison_norm",  "omega_image", "thm_iii",
                                              "gns_axioms"};
  return names;
}

std::vector<std::string> VerificationReport::unexpected_failures() const {
  std::vector<std::string> out;
  for (const auto& name : failures()) {
    const auto& free = hypothesis_free_checks();
    if (!expected_failure || std::find(free.begin(), free.end(), name) != free.end()) {
      out.push_back(name);
    }
  }
  return out;
}

VerificationReport verify_instance(const Channel& ch, const VerifyConfig& cfg,
                                   std::string instance_id, std::uint64_t seed,
                                   std::optional<GenSpec> spec) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.instance_id = std::move(instance_id);
  rep.seed = seed;
  rep.dims = ch.source.algebra().block_dims();
  rep.spec = std::move(spec);
  rep.expected_failure = rep.spec && !is_markov_kind(rep.spec->kind);

  const ModularData mn(ch.source, cfg.z_max);
  const ModularData mm(ch.target, cfg.z_max);
  const double kappa = std::max(mn.kappa(), mm.kappa());
  const double base = cfg.tol.base;
  auto scaled = [&](double power) { return base * condition_scale(kappa, power); };
  auto put = [&](const std::string& name, double value, double tol) {
    rep.residuals[name] = value;
    rep.tolerances[name] = tol;
    rep.verdicts[name] = std::isfinite(value) && value <= tol;
  };

  const MarkovCheck chk = check_markov(ch, cfg.tol);
  put("markov_unital", chk.unital_residual, chk.unital_tol);
  put("markov_cp", std::max({0.0, -chk.cp_min_eig, chk.choi_hermiticity}), chk.cp_tol);
  put("markov_state", chk.state_residual, chk.state_tol);
  put("markov_modular", chk.modular_residual, chk.modular_tol);

  const CMatrix t = l2_matrix(ch);
  put("omega_image", (t * mn.omega().coords() - mm.omega().coords()).norm(), base);

  double max_re = 0.0;
  for (cplx z : cfg.z_samples) max_re = std::max(max_re, std::abs(z.real()));
  double max_s = 0.0;
  for (double s : cfg.s_samples) max_s = std::max(max_s, std::abs(s));

  put("eq32_t", crucial_residual(t, mn, mm, cfg.t_samples), base);
  const CommuteResult cr = commute_residuals(t, mn, mm, cfg.z_samples, cfg.s_samples);
  put("thm_commute_z", cr.thm_commute_z, scaled(max_re));
  put("thm_i_s", cr.thm_i_s, scaled(max_s));
  const SymmetryResult sr = symmetry_residuals(ch, t, mn, mm);
  put("thm_ii", sr.thm_ii, base);
  put("thm_iii", sr.thm_iii, scaled(0.5));
  const AdjointResult ar = adjoint_residuals(ch, t);
  put("adjoint_consistency", ar.adjoint_consistency, scaled(1.0));
  put("petz_match", ar.petz_match, scaled(1.0));
  put("kadison_norm", ar.kadison_norm, base);

  double gns = 0.0;
  for (const ModularData* md : {&mn, &mm}) {
    for (const auto& [name, value] : gns_axiom_residuals(*md, seed)) gns = std::max(gns, value);
  }
  put("gns_axioms", gns, scaled(1.0));

  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

GenSpec suite_spec(const SuiteConfig& cfg, int trial) {
  if (cfg.kinds.empty() || cfg.dims.empty()) throw Error(ErrorCode::BadSpec, "empty kinds or dims");
  const auto k = cfg.kinds.size();
  const auto d = cfg.dims.size();
  const auto i = static_cast<std::size_t>(trial);
  GenSpec spec;
  spec.kind = cfg.kinds[i % k];
  const std::size_t di = (i / k) % d;
  spec.dims = cfg.dims[di];
  spec.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  spec.params.min_gap = cfg.min_gap;
  if (spec.kind == GenKind::StateToScalar) spec.params.target_dims = cfg.dims[(di + 1) % d];
  return spec;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::BadSpec, "trials must be >= 1");
  SuiteResult res{cfg, {}, {}};
  for (int i = 0; i < cfg.trials; ++i) {
    const GenSpec spec = suite_spec(cfg, i);
    const Instance inst = generate(spec);
    char id[32];
    std::snprintf(id, sizeof id, "trial-%05d", i);
    VerificationReport rep = verify_instance(inst.channel, cfg.verify, id, spec.seed, spec);
    rep.flagged = inst.flagged;
    rep.note = inst.note;
    res.reports.push_back(std::move(rep));
  }
  std::sort(res.reports.begin(), res.reports.end(),
            [](const auto& a, const auto& b) { return a.instance_id < b.instance_id; });

  SuiteSummary& s = res.summary;
  for (const auto& rep : res.reports) {
    ++s.total;
    if (rep.flagged) ++s.flagged;
    const bool ok = rep.all_pass();
    if (ok) ++s.passed;
    if (!rep.unexpected_failures().empty() && !rep.flagged) ++s.unexpected_failures;
    if (rep.expected_failure && !ok) ++s.expected_failures;
    auto& target = rep.expected_failure ? s.expected_max_residuals : s.max_residuals;
    for (const auto& [name, value] : rep.residuals) {
      target[name] = std::max(target.count(name) ? target[name] : 0.0, value);
    }
  }
  return res;
}

}  // namespace modmark
