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

#ifndef MODMARK_TESTS_TEST_UTIL_HPP
#define MODMARK_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <vector>

#include "modmark/algebra.hpp"
#include "modmark/numsub.hpp"

namespace modmark::testing {

inline CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                            static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

// n x n matrix unit E_ij with 1-based indices, as in the usual notation.
inline CMatrix unit(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

inline AlgebraElement single(const CMatrix& m) {
  return AlgebraElement(BlockAlgebra({static_cast<int>(m.rows())}), {m});
}

// The running qubit example: D = diag(2/3, 1/3).
inline FaithfulState qubit_state() { return FaithfulState(single(diag({2.0 / 3.0, 1.0 / 3.0}))); }

inline double dist(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).norm(); }

}  // namespace modmark::testing

#endif  // MODMARK_TESTS_TEST_UTIL_HPP
