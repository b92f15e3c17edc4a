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

#include <unsupported/Eigen/MatrixFunctions>

#include "modmark/error.hpp"
#include "modmark/numsub.hpp"
#include "modmark/random.hpp"
#include "test_util.hpp"

using namespace modmark;
using modmark::testing::diag;

namespace {

CMatrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.gaussian(n, n);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_pd(int n, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.gaussian(n, n);
  return g * g.adjoint() + 0.1 * CMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("herm_eig on diagonal input sorts ascending") {
  const HermEig e = herm_eig(diag({2.0 / 3.0, 1.0 / 3.0}));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e.eigenvalues(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // Columns are a permutation of the identity up to phase.
  CHECK(std::abs(e.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig on the identity and Pauli X") {
  const HermEig id = herm_eig(CMatrix::Identity(2, 2));
  CHECK(id.eigenvalues.isApprox(Eigen::Vector2d(1.0, 1.0)));
  CHECK((id.eigenvectors.adjoint() * id.eigenvectors - CMatrix::Identity(2, 2)).norm() < 1e-14);

  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const HermEig e = herm_eig(x);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CVector minus(2), plus(2);
  minus << r, -r;
  plus << r, r;
  CHECK(std::abs(e.eigenvectors.col(0).dot(minus)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors.col(1).dot(plus)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CMatrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(herm_eig(a), Error);
  try {
    herm_eig(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const CMatrix a = random_hermitian(n, seed * 31 + static_cast<std::uint64_t>(n));
      const HermEig e = herm_eig(a);
      const CMatrix rec = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() *
                          e.eigenvectors.adjoint();
      CHECK((rec - a).norm() <= 1e-12 * std::max(1.0, a.norm()));
      for (Eigen::Index i = 1; i < n; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
    }
  }
}

TEST_CASE("matrix_power examples") {
  CHECK((matrix_power(diag({4.0, 1.0}), 0.5) - diag({2.0, 1.0})).norm() < 1e-14);
  const CMatrix a = random_pd(3, 9);
  CHECK((matrix_power(a, 0.0) - CMatrix::Identity(3, 3)).norm() < 1e-13);

  // Imaginary power against an entrywise exp(i ln d) oracle.
  const CMatrix u = matrix_power(diag({2.0 / 3.0, 1.0 / 3.0}), cplx(0.0, 1.0));
  const cplx i(0.0, 1.0);
  CHECK(std::abs(u(0, 0) - std::exp(i * std::log(2.0 / 3.0))) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::exp(i * std::log(1.0 / 3.0))) < 1e-15);
  CHECK(std::abs(u(0, 1)) < 1e-15);
  CHECK((u.adjoint() * u - CMatrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("matrix_power group and inverse laws") {
  const std::vector<cplx> zs{{0.5, 0.0}, {-1.5, 2.0}, {0.25, -3.0}, {2.0, 0.7}, {0.0, 1.3}};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const CMatrix a = random_pd(4, 100 + seed);
    const HermEig e = herm_eig(a);
    const double kappa = e.eigenvalues.maxCoeff() / e.eigenvalues.minCoeff();
    for (cplx z1 : zs) {
      for (cplx z2 : zs) {
        if (std::abs((z1 + z2).real()) > 2.0) continue;
        const CMatrix lhs = matrix_power(a, z1) * matrix_power(a, z2);
        const CMatrix rhs = matrix_power(a, z1 + z2);
        const double scale = std::pow(kappa, std::abs(z1.real()) + std::abs(z2.real()));
        CHECK((lhs - rhs).norm() <= 1e-12 * scale * std::max(1.0, rhs.norm()));
      }
    }
    for (double t : {0.3, 1.0, 1.7}) {
      const CMatrix prod = matrix_power(a, -t) * matrix_power(a, t);
      CHECK((prod - CMatrix::Identity(4, 4)).norm() <= 1e-12 * std::pow(kappa, t));
    }
  }
}

TEST_CASE("matrix_power agrees with the exponential of z log A") {
  const CMatrix a = random_pd(3, 5);
  const cplx z(0.4, -1.2);
  const CMatrix scaled = z * matrix_log(a);
  const CMatrix oracle = scaled.exp();
  CHECK((matrix_power(a, z) - oracle).norm() < 1e-11);
  CHECK((CMatrix(matrix_log(a).exp()) - a).norm() < 1e-12);
}

TEST_CASE("matrix_power rejects singular input") {
  CHECK_THROWS_AS(matrix_power(diag({1.0, 0.0}), 0.5), Error);
  try {
    matrix_power(diag({1.0, 1e-14}), 0.5);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("op_norm examples") {
  CHECK(op_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(op_norm(diag({0.5, -2.0})) == doctest::Approx(2.0));
  CMatrix shift = CMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK(op_norm(shift) == doctest::Approx(1.0));
}

TEST_CASE("condition_scale and tolerance") {
  CHECK(condition_scale(4.0, 0.5) == doctest::Approx(2.0));
  CHECK(condition_scale(4.0, -1.0) == doctest::Approx(4.0));
  CHECK(condition_scale(1.0, 3.0) == doctest::Approx(1.0));
  const Tolerance tol{1e-9, 10.0};
  CHECK(tol.effective() == doctest::Approx(1e-8));
  CHECK(tol.effective(5.0) == doctest::Approx(5e-8));
}

TEST_CASE("kron matches the entrywise definition") {
  Rng rng(3);
  const CMatrix a = rng.gaussian(2, 3);
  const CMatrix b = rng.gaussian(3, 2);
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("helpers on degenerate input") {
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK(all_finite(bad));
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(all_finite(bad));
  CHECK(hermiticity_residual(CMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("rng is reproducible") {
  Rng a(mix_seed(42, 1)), b(mix_seed(42, 1)), c(mix_seed(42, 2));
  const CMatrix ga = a.gaussian(3, 3);
  CHECK(ga == b.gaussian(3, 3));
  CHECK(ga != c.gaussian(3, 3));
}
