// Copyright 2026 The qshift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex-matrix substrate: checks, tensor products, partial traces,
// Hermitian eigendecomposition and the generalized Gell-Mann bases.

#include <cstddef>
#include <vector>

#include "qshift/common.hpp"

namespace qshift {

/// One nonzero entry of a sparse generator.
struct SparseEntry {
    int row;
    int col;
    cplx value;
};

/// Ordered generators of SU(N), normalized to Tr(l_i l_j) = 2 delta_ij.
///
/// Ordering is frozen: all symmetric off-diagonal generators for pairs
/// (j, k), j < k, in lexicographic order; then the antisymmetric ones in
/// the same pair order; then the N-1 diagonal ones. For N = 2 this is
/// exactly (sigma_1, sigma_2, sigma_3). Every correlation-matrix index in
/// the library refers to this order.
class GeneratorBasis {
public:
    explicit GeneratorBasis(int dimension);

    [[nodiscard]] int dimension() const noexcept { return dim_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(dense_.size()); }
    [[nodiscard]] const CMatrix& operator[](int i) const { return dense_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<CMatrix>& generators() const noexcept { return dense_; }
    /// Nonzero entries of generator i (at most N of them).
    [[nodiscard]] const std::vector<SparseEntry>& sparse(int i) const {
        return sparse_[static_cast<std::size_t>(i)];
    }

    /// Expansion coefficients c_i = Tr(l_i M) / 2 of a traceless operator.
    [[nodiscard]] RVector coefficients(const CMatrix& m) const;

    /// Tr(l_i M) for every generator, using the sparse structure.
    [[nodiscard]] CVector traces_with(const CMatrix& m) const;

private:
    int dim_;
    std::vector<CMatrix> dense_;
    std::vector<std::vector<SparseEntry>> sparse_;
};

/// Canonical basis for SU(n). Throws InvalidDimension if n < 2.
[[nodiscard]] GeneratorBasis gell_mann_basis(int n);

/// Shared, lazily built basis for small n (2..16); falls back to a fresh one.
[[nodiscard]] const GeneratorBasis& cached_basis(int n);

/// The Pauli matrices sigma_1..sigma_3, index 0..2.
[[nodiscard]] const CMatrix& pauli(int i);

/// Kronecker product, A-index major: (A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l].
[[nodiscard]] CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Reduced operator on `keep`. Throws InvalidDimension on shape mismatch.
[[nodiscard]] CMatrix partial_trace(const CMatrix& rho, Dims dims, Subsystem keep);

/// Transpose of the B indices only.
[[nodiscard]] CMatrix partial_transpose_b(const CMatrix& rho, Dims dims);

/// Entrywise max |a - b|.
[[nodiscard]] double max_abs_diff(const CMatrix& a, const CMatrix& b);

[[nodiscard]] bool is_hermitian(const CMatrix& m, double tol = 1e-10);
[[nodiscard]] bool is_unitary(const CMatrix& u, double tol = 1e-10);

/// Re Tr(A^dagger B) computed with the vectorized dot kernel. For Hermitian
/// A and B this is Tr(A B).
[[nodiscard]] double hs_inner(const CMatrix& a, const CMatrix& b);

/// Frobenius inner product of two real matrices of equal shape.
[[nodiscard]] double frobenius_inner(const RMatrix& a, const RMatrix& b);

struct EigenDecomposition {
    RVector values;   ///< ascending
    CMatrix vectors;  ///< columns are eigenvectors; unitary
};

/// Throws InvalidOperator if `m` is not square or not Hermitian within `tol`.
[[nodiscard]] EigenDecomposition hermitian_eig(const CMatrix& m, double tol = 1e-10);

/// exp(i H) for Hermitian H (no Hermiticity check).
[[nodiscard]] CMatrix exp_i_hermitian(const CMatrix& h);

/// (I_a (x) U) rho (I_a (x) U)^dagger, applying U to subsystem B.
[[nodiscard]] CMatrix apply_local_b(const CMatrix& rho, Dims dims, const CMatrix& u);

}  // namespace qshift
