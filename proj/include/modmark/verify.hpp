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

#ifndef MODMARK_VERIFY_HPP
#define MODMARK_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modmark/generators.hpp"

namespace modmark {

// Sample sets. The t set always starts with +-1, +-0.37, +-5.
std::vector<double> default_t_samples(int n = 8);
// |Re z| <= re_max, |Im z| <= im_max, deterministic low-discrepancy points.
std::vector<cplx> default_z_samples(int n = 16, double re_max = 1.0, double im_max = 5.0);
// Five evenly spaced points of [a, b].
std::vector<double> s_samples(double a = -1.0, double b = 1.0);

struct VerifyConfig {
  std::vector<double> t_samples = default_t_samples();
  std::vector<cplx> z_samples = default_z_samples();
  std::vector<double> s_samples = modmark::s_samples();
  Tolerance tol{};
  double z_max = 2.0;
};

// max_t ||T Delta_rho^{it} - Delta_phi^{it} T||_op. Throws NotMarkov.
double verify_crucial(const Channel& ch, std::span<const double> t_samples,
                      const Tolerance& tol = {});

struct CommuteResult {
  double thm_commute_z = 0.0;  // max_z ||T Delta_rho^z - Delta_phi^z T||_op
  double thm_i_s = 0.0;        // max_s ||Delta_phi^{-s} T Delta_rho^s - T||_op
};

// Throws NotMarkov or PowerRangeExceeded.
CommuteResult verify_commute(const Channel& ch, std::span<const cplx> z_samples,
                             std::span<const double> s_samples, const Tolerance& tol = {},
                             double z_max = 2.0);

struct SymmetryResult {
  double thm_ii = 0.0;   // ||J_phi T J_rho - T||_op
  double thm_iii = 0.0;  // max over units ||S_phi T S_rho (x Omega) - T (x Omega)||
};

SymmetryResult verify_modular_symmetry(const Channel& ch, const Tolerance& tol = {});

struct AdjointResult {
  double adjoint_consistency = 0.0;  // ||T^H - T_{Phi*}||_op
  double petz_match = 0.0;           // ||Phi*_ac - Phi*_petz||_op on superoperators
  double kadison_norm = 0.0;         // max(0, ||T||_op - 1)
};

AdjointResult verify_adjoint(const Channel& ch, const Tolerance& tol = {});

struct VerificationReport {
  std::string instance_id;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::optional<GenSpec> spec;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  std::map<std::string, bool> verdicts;
  bool expected_failure = false;  // instance is not expected to be Markov
  bool flagged = false;           // generator NoConvergence
  std::string note;
  double elapsed_ms = 0.0;        // not serialized

  bool all_pass() const;
  std::vector<std::string> failures() const;
  // Failures that count against the suite exit status.
  std::vector<std::string> unexpected_failures() const;
};

// Checks that must pass for every u.c.p. state-preserving map, modular
// commutation or not.
const std::vector<std::string>& hypothesis_free_checks();

// Runs every residual check on one channel. Never throws on failing
// residuals; preconditions are reported as failed verdicts.
VerificationReport verify_instance(const Channel& ch, const VerifyConfig& cfg,
                                   std::string instance_id = "instance", std::uint64_t seed = 0,
                                   std::optional<GenSpec> spec = std::nullopt);

struct SuiteConfig {
  std::vector<std::vector<int>> dims{{2}, {3}, {4}};
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<GenKind> kinds{GenKind::Identity};
  double min_gap = 0.1;
  VerifyConfig verify{};
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  int unexpected_failures = 0;
  int expected_failures = 0;  // non-Markov instances with at least one failing check
  int flagged = 0;
  std::map<std::string, double> max_residuals;           // Markov instances
  std::map<std::string, double> expected_max_residuals;  // non-Markov instances
};

struct SuiteResult {
  SuiteConfig config;
  std::vector<VerificationReport> reports;  // sorted by instance_id
  SuiteSummary summary;
};

// Trial i uses kind kinds[i % K], dims dims[(i / K) % D] and seed
// mix_seed(seed, i). Deterministic per config.
GenSpec suite_spec(const SuiteConfig& cfg, int trial);
SuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace modmark

#endif  // MODMARK_VERIFY_HPP
