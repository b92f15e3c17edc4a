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

#ifndef MODMARK_ALGEBRA_HPP
#define MODMARK_ALGEBRA_HPP

#include <cstdint>
#include <vector>

#include "modmark/numsub.hpp"

namespace modmark {

// Finite direct sum of full matrix blocks M_{n_1} + ... + M_{n_K}.
class BlockAlgebra {
 public:
  explicit BlockAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  std::size_t num_blocks() const { return dims_.size(); }
  int block_dim(std::size_t k) const { return dims_[k]; }

  // Sum of n_k^2: the dimension of the algebra and of its GNS space.
  Eigen::Index hs_dim() const { return hs_dim_; }
  // Sum of n_k: the size of the block-diagonal matrix realization.
  Eigen::Index matrix_dim() const { return matrix_dim_; }
  // Offset of block k in Hilbert-Schmidt coordinates.
  Eigen::Index hs_offset(std::size_t k) const { return hs_offsets_[k]; }
  Eigen::Index matrix_offset(std::size_t k) const { return matrix_offsets_[k]; }

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<int> dims_;
  std::vector<Eigen::Index> hs_offsets_;
  std::vector<Eigen::Index> matrix_offsets_;
  Eigen::Index hs_dim_ = 0;
  Eigen::Index matrix_dim_ = 0;
};

// Matrix unit E_{row,col} inside block `block`.
struct MatrixUnit {
  std::size_t block;
  int row;
  int col;
};

// Matrix units in Hilbert-Schmidt coordinate order (column-stacking inside
// each block, blocks concatenated).
std::vector<MatrixUnit> matrix_units(const BlockAlgebra& alg);

class AlgebraElement {
 public:
  AlgebraElement(BlockAlgebra parent, std::vector<CMatrix> blocks);

  static AlgebraElement zero(const BlockAlgebra& alg);
  static AlgebraElement identity(const BlockAlgebra& alg);
  static AlgebraElement unit(const BlockAlgebra& alg, const MatrixUnit& e);
  static AlgebraElement from_coords(const BlockAlgebra& alg, const CVector& v);
  // Block-diagonal compression of a (matrix_dim x matrix_dim) matrix.
  static AlgebraElement compress(const BlockAlgebra& alg, const CMatrix& m);

  const BlockAlgebra& parent() const { return parent_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(std::size_t k) const { return blocks_[k]; }
  CMatrix& block(std::size_t k) { return blocks_[k]; }

  CVector coords() const;
  CMatrix as_matrix() const;  // block-diagonal realization
  AlgebraElement adjoint() const;
  double norm() const;        // Frobenius over all blocks
  cplx trace() const;

  AlgebraElement& operator+=(const AlgebraElement& y);
  AlgebraElement& operator-=(const AlgebraElement& y);
  AlgebraElement& operator*=(cplx c);

  friend AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
  friend AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
  friend AlgebraElement operator*(cplx c, AlgebraElement x) { return x *= c; }
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);

 private:
  BlockAlgebra parent_;
  std::vector<CMatrix> blocks_;
};

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);

// Faithful normal state phi(x) = sum_k Tr(D_k x_k).
class FaithfulState {
 public:
  // Validates: every block Hermitian positive definite, total trace 1 (1e-12).
  explicit FaithfulState(AlgebraElement density);

  // Rescales to unit trace before validating.
  static FaithfulState normalized(AlgebraElement density);
  static FaithfulState tracial(const BlockAlgebra& alg);

  const BlockAlgebra& algebra() const { return density_.parent(); }
  const AlgebraElement& density() const { return density_; }

  // lambda_max / lambda_min over all blocks.
  double condition_number() const;

 private:
  AlgebraElement density_;
};

bool approx_equal(const FaithfulState& a, const FaithfulState& b, double tol = 1e-12);

cplx evaluate_state(const FaithfulState& s, const AlgebraElement& x);

enum class ElementKind { General, Hermitian, Positive, Unitary };

AlgebraElement random_element(const BlockAlgebra& alg, std::uint64_t seed,
                              ElementKind kind);

// Throws ShapeMismatch unless a == b.
void require_same(const BlockAlgebra& a, const BlockAlgebra& b, const char* what);

}  // namespace modmark

#endif  // MODMARK_ALGEBRA_HPP
