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

#ifndef MODMARK_GENERATORS_HPP
#define MODMARK_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modmark/markov.hpp"

namespace modmark {

enum class GenKind {
  Identity,
  Schur,
  Pinch,
  BlockExpectation,
  StateToScalar,
  Automorphism,
  Twirl,
  SpUcp,
  Convex,
};

std::string_view to_string(GenKind kind);
// Accepts the canonical names plus the aliases scalar, auto and block.
GenKind parse_kind(std::string_view name);
// The kinds expected to land in CP(N, M, rho, phi).
bool is_markov_kind(GenKind kind);

struct GenParams {
  double min_gap = 0.1;
  std::optional<std::vector<CMatrix>> density;        // source density blocks
  std::optional<std::vector<int>> target_dims;        // state_to_scalar, sp_ucp
  std::optional<std::vector<CMatrix>> schur;          // one C per block
  std::optional<std::vector<std::vector<int>>> partition;  // global eigen indices
  std::optional<std::vector<double>> theta;           // automorphism phases
  std::optional<std::vector<GenKind>> components;     // convex
  std::optional<std::vector<double>> weights;         // convex
  int max_iter = 5000;                                // sp_ucp
};

struct GenSpec {
  GenKind kind = GenKind::Identity;
  std::vector<int> dims{2};
  std::uint64_t seed = 0;
  GenParams params;
};

struct Instance {
  GenSpec spec;
  Channel channel;
  bool flagged = false;  // generator hit NoConvergence
  std::string note;
};

FaithfulState random_faithful_state(const BlockAlgebra& alg, std::uint64_t seed,
                                    double min_gap);

Channel identity_channel(const FaithfulState& state);

// Phi(x) = V (C .* V^H x V) V^H per block, with V the eigenvectors of D.
// Throws BadSchurMatrix unless each C is Hermitian psd with unit diagonal.
Channel schur_channel(const FaithfulState& state, const std::vector<CMatrix>& c);
Channel schur_channel(const FaithfulState& state, const CMatrix& c);

// x -> sum_i P_i x P_i. Throws ProjectionsDontCommuteWithD.
Channel block_expectation(const FaithfulState& state,
                          const std::vector<AlgebraElement>& projections);
// Spectral projections of D grouped by global eigen index.
std::vector<AlgebraElement> spectral_projections(const FaithfulState& state,
                                                 const std::vector<std::vector<int>>& groups);

// x -> source(x) 1_target.
Channel state_to_scalar(const FaithfulState& source, const FaithfulState& target);

// x -> U^H x U. Throws UnitaryDoesntCommuteWithD.
Channel automorphism_channel(const FaithfulState& state, const AlgebraElement& u);

// Pinching onto the columns of a unitary `basis` (per block). Unital and cp,
// state preserving only when the basis diagonalizes D.
Channel basis_pinching(const FaithfulState& state, const AlgebraElement& basis);

inline constexpr double kFrequencyTolerance = 1e-9;

// Projection onto the modular-commuting maps: keeps superoperator entries
// (in the eigenbases of D_N, D_M) whose modular frequencies match.
// Throws PreconditionFailed unless ch is unital, cp and state preserving.
Channel modular_twirl(const Channel& ch, const Tolerance& tol = {},
                      double freq_tol = kFrequencyTolerance);

struct SpUcpResult {
  Channel channel;
  bool converged = false;
  int iterations = 0;
  double psd_residual = 0.0;
  double affine_residual = 0.0;
};

// Alternating projections on Choi space between the psd cone and
// {unital} n {Phi^dagger(D_M) = D_N}, started from a seeded random channel
// (or from `start`). Does not throw on NoConvergence; see `converged`.
SpUcpResult sp_ucp(const FaithfulState& source, const FaithfulState& target,
                   std::uint64_t seed, int max_iter = 5000,
                   const std::optional<Channel>& start = std::nullopt);

// Throws ShapeMismatch or BadWeights.
Channel convex_combine(const std::vector<Channel>& channels, const std::vector<double>& weights);

Instance generate(const GenSpec& spec);

}  // namespace modmark

#endif  // MODMARK_GENERATORS_HPP
