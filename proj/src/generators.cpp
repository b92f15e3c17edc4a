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

#include "modmark/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "modmark/error.hpp"
#include "modmark/random.hpp"

namespace modmark {

namespace {

constexpr double kCommuteTol = 1e-10;

// Cluster ids for a combined frequency list: consecutive sorted values closer
// than freq_tol share an id.
std::vector<int> cluster_frequencies(const std::vector<double>& freqs, double freq_tol) {
  std::vector<std::size_t> order(freqs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return freqs[a] < freqs[b]; });
  std::vector<int> id(freqs.size(), 0);
  int current = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && freqs[order[i]] - freqs[order[i - 1]] > freq_tol) ++current;
    id[order[i]] = current;
  }
  return id;
}

// Eigenvector of global index g: (block, local index).
std::pair<std::size_t, int> split_global(const BlockAlgebra& alg, int g) {
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    if (g < alg.block_dim(k)) return {k, g};
    g -= alg.block_dim(k);
  }
  throw Error(ErrorCode::BadSpec, "eigen index out of range");
}

CMatrix random_correlation(Rng& rng, int n) {
  CMatrix g = rng.gaussian(n, n);
  for (int i = 0; i < n; ++i) g.row(i) /= g.row(i).norm();
  CMatrix c = g * g.adjoint();
  for (int i = 0; i < n; ++i) c(i, i) = 1.0;
  return c;
}

// Superoperator <-> vectorization used by sp_ucp's affine projection.
CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

Channel project_psd(const Channel& ch) {
  ChoiMatrix choi = to_choi(ch);
  for (auto& b : choi.blocks) {
    const HermEig e = herm_eig(0.5 * (b.matrix + b.matrix.adjoint()));
    const CVector clamped = e.eigenvalues.cwiseMax(0.0).cast<cplx>();
    b.matrix = e.eigenvectors * clamped.asDiagonal() * e.eigenvectors.adjoint();
  }
  return channel_from_choi(choi, ch.source, ch.target);
}

double psd_violation(const Channel& ch) { return std::max(0.0, -to_choi(ch).min_eigenvalue()); }

}  // namespace

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::Identity: return "identity";
    case GenKind::Schur: return "schur";
    case GenKind::Pinch: return "pinch";
    case GenKind::BlockExpectation: return "block_expectation";
    case GenKind::StateToScalar: return "state_to_scalar";
    case GenKind::Automorphism: return "automorphism";
    case GenKind::Twirl: return "twirl";
    case GenKind::SpUcp: return "sp_ucp";
    case GenKind::Convex: return "convex";
  }
  return "unknown";
}

GenKind parse_kind(std::string_view name) {
  for (GenKind k : {GenKind::Identity, GenKind::Schur, GenKind::Pinch, GenKind::BlockExpectation,
                    GenKind::StateToScalar, GenKind::Automorphism, GenKind::Twirl, GenKind::SpUcp,
                    GenKind::Convex}) {
    if (name == to_string(k)) return k;
  }
  if (name == "scalar") return GenKind::StateToScalar;
  if (name == "auto") return GenKind::Automorphism;
  if (name == "block") return GenKind::BlockExpectation;
  throw Error(ErrorCode::BadSpec, "unknown kind '" + std::string(name) + "'");
}

bool is_markov_kind(GenKind kind) { return kind != GenKind::SpUcp; }

FaithfulState random_faithful_state(const BlockAlgebra& alg, std::uint64_t seed, double min_gap) {
  if (!(min_gap >= 0.0 && min_gap < 1.0)) {
    throw Error(ErrorCode::BadSpec, "min_gap must lie in [0, 1)");
  }
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  double lmax = 0.0;
  double lmin = std::numeric_limits<double>::infinity();
  for (int n : alg.block_dims()) {
    const CMatrix g = rng.gaussian(n, n);
    CMatrix d = g * g.adjoint();
    d = (0.5 * (d + d.adjoint())).eval();
    d += 1e-3 * CMatrix::Identity(n, n);
    const HermEig e = herm_eig(d);
    lmax = std::max(lmax, e.eigenvalues.maxCoeff());
    lmin = std::min(lmin, e.eigenvalues.minCoeff());
    blocks.push_back(std::move(d));
  }
  if (min_gap > 0.0 && lmin < min_gap * lmax) {
    const double shift = (min_gap * lmax - lmin) / (1.0 - min_gap) * (1.0 + 1e-9);
    for (auto& d : blocks) d += shift * CMatrix::Identity(d.rows(), d.cols());
  }
  return FaithfulState::normalized(AlgebraElement(alg, std::move(blocks)));
}

Channel identity_channel(const FaithfulState& state) {
  const auto d = state.algebra().hs_dim();
  return Channel(state, state, CMatrix::Identity(d, d));
}

Channel schur_channel(const FaithfulState& state, const std::vector<CMatrix>& c) {
  const BlockAlgebra& alg = state.algebra();
  if (c.size() != alg.num_blocks()) throw Error(ErrorCode::BadSchurMatrix, "one C per block");
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int n = alg.block_dim(k);
    if (c[k].rows() != n || c[k].cols() != n) throw Error(ErrorCode::BadSchurMatrix, "C shape");
    if (hermiticity_residual(c[k]) > 1e-12 * std::max(1.0, c[k].norm())) {
      throw Error(ErrorCode::BadSchurMatrix, "C is not Hermitian");
    }
    for (int i = 0; i < n; ++i) {
      if (std::abs(c[k](i, i) - 1.0) > 1e-12) throw Error(ErrorCode::BadSchurMatrix, "C_ii != 1");
    }
    if (herm_eig(c[k]).eigenvalues.minCoeff() < -1e-12) {
      throw Error(ErrorCode::BadSchurMatrix, "C is not positive semidefinite");
    }
  }
  const ModularData md(state);
  return channel_from_function(state, state, [&](const AlgebraElement& x) {
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < x.blocks().size(); ++k) {
      const CMatrix& v = md.d_eig()[k].eigenvectors;
      const CMatrix xe = v.adjoint() * x.block(k) * v;
      out.push_back(v * c[k].cwiseProduct(xe) * v.adjoint());
    }
    return AlgebraElement(x.parent(), std::move(out));
  });
}

Channel schur_channel(const FaithfulState& state, const CMatrix& c) {
  return schur_channel(state, std::vector<CMatrix>{c});
}

std::vector<AlgebraElement> spectral_projections(const FaithfulState& state,
                                                 const std::vector<std::vector<int>>& groups) {
  const BlockAlgebra& alg = state.algebra();
  const ModularData md(state);
  std::vector<int> seen(static_cast<std::size_t>(alg.matrix_dim()), 0);
  std::vector<AlgebraElement> out;
  for (const auto& g : groups) {
    AlgebraElement p = AlgebraElement::zero(alg);
    for (int idx : g) {
      if (idx < 0 || idx >= alg.matrix_dim()) throw Error(ErrorCode::BadSpec, "eigen index out of range");
      ++seen[static_cast<std::size_t>(idx)];
      const auto [k, i] = split_global(alg, idx);
      const CVector v = md.d_eig()[k].eigenvectors.col(i);
      p.block(k) += v * v.adjoint();
    }
    out.push_back(std::move(p));
  }
  for (int s : seen) {
    if (s != 1) throw Error(ErrorCode::BadSpec, "partition must use every eigen index exactly once");
  }
  return out;
}

Channel block_expectation(const FaithfulState& state,
                          const std::vector<AlgebraElement>& projections) {
  const BlockAlgebra& alg = state.algebra();
  if (projections.empty()) throw Error(ErrorCode::BadSpec, "empty partition");
  AlgebraElement sum = AlgebraElement::zero(alg);
  for (const auto& p : projections) {
    require_same(p.parent(), alg, "block_expectation");
    if ((p * p - p).norm() > kCommuteTol || (p.adjoint() - p).norm() > kCommuteTol) {
      throw Error(ErrorCode::BadSpec, "partition element is not a projection");
    }
    if (commutator(p, state.density()).norm() > kCommuteTol) {
      throw Error(ErrorCode::ProjectionsDontCommuteWithD, "[P, D] != 0");
    }
    sum += p;
  }
  if ((sum - AlgebraElement::identity(alg)).norm() > kCommuteTol) {
    throw Error(ErrorCode::BadSpec, "projections must sum to the identity");
  }
  return channel_from_function(state, state, [&](const AlgebraElement& x) {
    AlgebraElement y = AlgebraElement::zero(alg);
    for (const auto& p : projections) y += p * x * p;
    return y;
  });
}

Channel state_to_scalar(const FaithfulState& source, const FaithfulState& target) {
  const BlockAlgebra tgt = target.algebra();
  return channel_from_function(source, target, [&](const AlgebraElement& x) {
    return evaluate_state(source, x) * AlgebraElement::identity(tgt);
  });
}

Channel automorphism_channel(const FaithfulState& state, const AlgebraElement& u) {
  const BlockAlgebra& alg = state.algebra();
  require_same(u.parent(), alg, "automorphism_channel");
  if ((u.adjoint() * u - AlgebraElement::identity(alg)).norm() > kCommuteTol) {
    throw Error(ErrorCode::BadSpec, "U is not unitary");
  }
  if (commutator(u, state.density()).norm() > kCommuteTol) {
    throw Error(ErrorCode::UnitaryDoesntCommuteWithD, "[U, D] != 0");
  }
  return channel_from_function(state, state, [&](const AlgebraElement& x) {
    return u.adjoint() * x * u;
  });
}

Channel basis_pinching(const FaithfulState& state, const AlgebraElement& basis) {
  require_same(basis.parent(), state.algebra(), "basis_pinching");
  return channel_from_function(state, state, [&](const AlgebraElement& x) {
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < x.blocks().size(); ++k) {
      const CMatrix& u = basis.block(k);
      const CMatrix d = (u.adjoint() * x.block(k) * u).diagonal().asDiagonal();
      out.push_back(u * d * u.adjoint());
    }
    return AlgebraElement(x.parent(), std::move(out));
  });
}

Channel modular_twirl(const Channel& ch, const Tolerance& tol, double freq_tol) {
  const MarkovCheck chk = check_markov(ch, tol);
  if (!chk.ucp_state_ok()) {
    throw Error(ErrorCode::PreconditionFailed, "twirl input must be unital, cp and state preserving");
  }
  const ModularData mn(ch.source);
  const ModularData mm(ch.target);
  const CMatrix wn = eigen_frame_matrix(mn);
  const CMatrix wm = eigen_frame_matrix(mm);
  CMatrix s = wm.adjoint() * ch.superop * wn;

  const std::vector<double> fn = mn.modular_frequencies();
  const std::vector<double> fm = mm.modular_frequencies();
  std::vector<double> all = fm;
  all.insert(all.end(), fn.begin(), fn.end());
  const std::vector<int> ids = cluster_frequencies(all, freq_tol);
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
      if (ids[static_cast<std::size_t>(r)] != ids[fm.size() + static_cast<std::size_t>(c)]) {
        s(r, c) = 0.0;
      }
    }
  }
  return Channel(ch.source, ch.target, wm * s * wn.adjoint());
}

SpUcpResult sp_ucp(const FaithfulState& source, const FaithfulState& target, std::uint64_t seed,
                   int max_iter, const std::optional<Channel>& start) {
  const BlockAlgebra& n = source.algebra();
  const BlockAlgebra& m = target.algebra();
  const Eigen::Index dn = n.hs_dim();
  const Eigen::Index dm = m.hs_dim();

  Channel current = start ? *start : [&] {
    Rng rng(seed);
    std::vector<CMatrix> kraus;
    CMatrix norm = CMatrix::Zero(m.matrix_dim(), m.matrix_dim());
    for (int i = 0; i < 3; ++i) {
      kraus.push_back(rng.gaussian(n.matrix_dim(), m.matrix_dim()));
      norm += kraus.back().adjoint() * kraus.back();
    }
    const CMatrix inv_sqrt = matrix_power(norm, -0.5);
    for (auto& k : kraus) k = (k * inv_sqrt).eval();
    return channel_from_kraus(kraus, source, target);
  }();
  if (start) {
    require_same(start->source.algebra(), n, "sp_ucp start");
    require_same(start->target.algebra(), m, "sp_ucp start");
  }

  // Affine constraints on s = vec(S): S vec(1_N) = vec(1_M) and
  // S^T conj(d_M) = conj(d_N), i.e. Phi^dagger(D_M) = D_N.
  const CVector one_n = AlgebraElement::identity(n).coords();
  const CVector one_m = AlgebraElement::identity(m).coords();
  const CVector dmc = target.density().coords().conjugate();
  const CVector dnc = source.density().coords().conjugate();
  CMatrix a(dm + dn, dm * dn);
  a.topRows(dm) = kron(one_n.transpose(), CMatrix::Identity(dm, dm));
  a.bottomRows(dn) = kron(CMatrix::Identity(dn, dn), dmc.transpose());
  CVector b(dm + dn);
  b << one_m, dnc;
  const CMatrix a_pinv = Eigen::CompleteOrthogonalDecomposition<CMatrix>(a).pseudoInverse();

  auto project_affine = [&](const Channel& ch) {
    const CVector s = vec(ch.superop);
    const CVector p = s - a_pinv * (a * s - b);
    return Channel(source, target, unvec(p, dm, dn));
  };
  auto affine_residual = [&](const Channel& ch) { return (a * vec(ch.superop) - b).norm(); };

  constexpr double kFeasible = 1e-10;
  SpUcpResult result{current, false, 0, psd_violation(current), affine_residual(current)};
  for (int it = 0; it <= max_iter; ++it) {
    const double psd = psd_violation(current);
    const double aff = affine_residual(current);
    if (it == 0 || psd + aff < result.psd_residual + result.affine_residual) {
      result = SpUcpResult{current, false, it, psd, aff};
    }
    if (psd <= kFeasible && aff <= kFeasible) {
      // Step toward x -> rho(x) 1, whose Choi matrix is positive definite and
      // which meets the affine constraints exactly, to clear the small
      // negative Choi eigenvalues left by the projections.
      if (psd > 0.0) {
        const Channel inner = state_to_scalar(source, target);
        const double margin = to_choi(inner).min_eigenvalue();
        const double eps = std::min(1.0, 2.0 * psd / (margin + psd));
        current = Channel(source, target, (1.0 - eps) * current.superop + eps * inner.superop);
      }
      result = SpUcpResult{current, true, it, psd_violation(current), affine_residual(current)};
      return result;
    }
    if (it == max_iter) break;
    current = project_affine(project_psd(current));
  }
  return result;
}

Channel convex_combine(const std::vector<Channel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw Error(ErrorCode::BadWeights, "need one weight per channel");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::BadWeights, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights must sum to 1");
  CMatrix s = CMatrix::Zero(channels[0].superop.rows(), channels[0].superop.cols());
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (!approx_equal(channels[i].source, channels[0].source) ||
        !approx_equal(channels[i].target, channels[0].target)) {
      throw Error(ErrorCode::ShapeMismatch, "convex_combine: source/target differ");
    }
    s += weights[i] * channels[i].superop;
  }
  return Channel(channels[0].source, channels[0].target, s);
}

namespace {

Channel generate_markov_on(GenKind kind, const FaithfulState& state, const GenParams& p,
                           std::uint64_t seed, Instance* info);

FaithfulState target_state(const GenSpec& spec, const FaithfulState& source) {
  if (!spec.params.target_dims) return source;
  return random_faithful_state(BlockAlgebra(*spec.params.target_dims), mix_seed(spec.seed, 5),
                               spec.params.min_gap);
}

Channel generate_markov_on(GenKind kind, const FaithfulState& state, const GenParams& p,
                           std::uint64_t seed, Instance* info) {
  const BlockAlgebra& alg = state.algebra();
  Rng rng(mix_seed(seed, 7));
  switch (kind) {
    case GenKind::Identity:
      return identity_channel(state);
    case GenKind::Schur: {
      if (p.schur) return schur_channel(state, *p.schur);
      std::vector<CMatrix> cs;
      for (int d : alg.block_dims()) cs.push_back(random_correlation(rng, d));
      return schur_channel(state, cs);
    }
    case GenKind::Pinch: {
      std::vector<CMatrix> cs;
      for (int d : alg.block_dims()) cs.push_back(CMatrix::Identity(d, d));
      return schur_channel(state, cs);
    }
    case GenKind::BlockExpectation: {
      std::vector<std::vector<int>> groups;
      if (p.partition) {
        groups = *p.partition;
      } else {
        const int total = static_cast<int>(alg.matrix_dim());
        const int parts = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(total));
        groups.resize(static_cast<std::size_t>(parts));
        for (int i = 0; i < total; ++i) {
          const auto g = i < parts ? static_cast<std::size_t>(i)
                                   : static_cast<std::size_t>(rng.next() % static_cast<std::uint64_t>(parts));
          groups[g].push_back(i);
        }
      }
      return block_expectation(state, spectral_projections(state, groups));
    }
    case GenKind::StateToScalar:
      return state_to_scalar(state, state);
    case GenKind::Automorphism: {
      const ModularData md(state);
      std::vector<double> theta;
      if (p.theta) {
        theta = *p.theta;
        if (theta.size() != static_cast<std::size_t>(alg.matrix_dim())) {
          throw Error(ErrorCode::BadSpec, "theta needs one phase per eigenvector");
        }
      } else {
        for (Eigen::Index i = 0; i < alg.matrix_dim(); ++i) theta.push_back(2.0 * M_PI * rng.uniform());
      }
      std::vector<CMatrix> blocks;
      std::size_t g = 0;
      for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
        const CMatrix& v = md.d_eig()[k].eigenvectors;
        CVector ph(v.cols());
        for (Eigen::Index i = 0; i < v.cols(); ++i) ph(i) = std::exp(cplx(0.0, theta[g++]));
        blocks.push_back(v * ph.asDiagonal() * v.adjoint());
      }
      return automorphism_channel(state, AlgebraElement(alg, std::move(blocks)));
    }
    case GenKind::Twirl: {
      const SpUcpResult base = sp_ucp(state, state, mix_seed(seed, 8), p.max_iter);
      if (!base.converged && info) {
        info->flagged = true;
        info->note = "twirl base did not converge";
      }
      return modular_twirl(base.channel);
    }
    case GenKind::Convex: {
      const std::vector<GenKind> comps = p.components.value_or(std::vector<GenKind>{
          GenKind::Identity, GenKind::Schur, GenKind::Automorphism, GenKind::StateToScalar});
      std::vector<Channel> chans;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i] == GenKind::Convex || comps[i] == GenKind::SpUcp) {
          throw Error(ErrorCode::BadSpec, "convex components must be Markov kinds");
        }
        chans.push_back(generate_markov_on(comps[i], state, GenParams{}, mix_seed(seed, 100 + i), info));
      }
      std::vector<double> w;
      if (p.weights) {
        w = *p.weights;
      } else {
        double total = 0.0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
          w.push_back(0.05 + rng.uniform());
          total += w.back();
        }
        for (auto& x : w) x /= total;
        // Renormalize so the sum is 1 to the last bit.
        double partial = 0.0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) partial += w[i];
        w.back() = 1.0 - partial;
      }
      return convex_combine(chans, w);
    }
    case GenKind::SpUcp:
      break;
  }
  throw Error(ErrorCode::BadSpec, "not a Markov generator kind");
}

}  // namespace

Instance generate(const GenSpec& spec) {
  const BlockAlgebra alg(spec.dims);
  const FaithfulState source =
      spec.params.density
          ? FaithfulState(AlgebraElement(alg, *spec.params.density))
          : random_faithful_state(alg, mix_seed(spec.seed, 0), spec.params.min_gap);

  if (spec.kind == GenKind::SpUcp) {
    const FaithfulState tgt = target_state(spec, source);
    const SpUcpResult r = sp_ucp(source, tgt, mix_seed(spec.seed, 6), spec.params.max_iter);
    Instance inst{spec, r.channel, !r.converged, ""};
    if (!r.converged) {
      inst.note = "NoConvergence after " + std::to_string(r.iterations) +
                  " iterations (psd " + std::to_string(r.psd_residual) + ", affine " +
                  std::to_string(r.affine_residual) + ")";
    }
    return inst;
  }
  if (spec.kind == GenKind::StateToScalar) {
    return Instance{spec, state_to_scalar(source, target_state(spec, source)), false, ""};
  }
  Instance inst{spec, identity_channel(source), false, ""};
  inst.channel = generate_markov_on(spec.kind, source, spec.params, spec.seed, &inst);
  return inst;
}

}  // namespace modmark
