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

// Density-matrix <-> Bloch form (r^A, r^B, beta) conversion.
//
//   rho = 1/(N_A N_B) [ I (x) I + c_A r^A.l^A (x) I + c_B I (x) r^B.l^B
//                       + c_A c_B beta_ij l_i^A (x) l_j^B ],   c_N = sqrt(N(N-1)/2)

#include <cstdint>
#include <utility>

#include "qshift/common.hpp"
#include "qshift/operator_core.hpp"

namespace qshift {

/// A validated density matrix on C^(N_A N_B). Immutable once built.
class BipartiteState {
public:
    /// Validates Hermiticity, unit trace and positivity. Throws
    /// InvalidDimension on shape mismatch and NotAState otherwise. The stored
    /// matrix is the Hermitian part of the input.
    static BipartiteState from_matrix(const CMatrix& rho, Dims dims, const Tolerances& tol = {});

    [[nodiscard]] const CMatrix& matrix() const noexcept { return rho_; }
    [[nodiscard]] Dims dims() const noexcept { return dims_; }
    /// Content hash of the matrix; identifies the state a cyclic unitary belongs to.
    [[nodiscard]] std::uint64_t id() const noexcept { return id_; }
    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eig_; }
    [[nodiscard]] double purity() const;

    [[nodiscard]] CMatrix reduced(Subsystem keep) const { return partial_trace(rho_, dims_, keep); }

private:
    BipartiteState(CMatrix rho, Dims dims, double min_eig);

    CMatrix rho_;
    Dims dims_;
    std::uint64_t id_ = 0;
    double min_eig_ = 0.0;
};

struct BlochForm {
    Dims dims;
    RVector rA;    ///< length N_A^2 - 1
    RVector rB;    ///< length N_B^2 - 1
    RMatrix beta;  ///< (N_A^2 - 1) x (N_B^2 - 1)

    /// Frobenius norm |beta|.
    [[nodiscard]] double beta_norm() const { return beta.norm(); }
};

/// sqrt(N(N-1)/2), the Bloch-vector scale for SU(N).
[[nodiscard]] double bloch_scale(int n);

/// Bloch vector of a single-party operator: r_i = sqrt(N/(2(N-1))) Tr(rho l_i).
[[nodiscard]] RVector bloch_vector(const CMatrix& rho, const GeneratorBasis& basis);

/// Inverse of bloch_vector: (I + c_N r.l)/N. No validation.
[[nodiscard]] CMatrix single_party_operator(const RVector& r, const GeneratorBasis& basis);

/// Throws InvalidDimension if the bases do not match the state dimensions.
[[nodiscard]] BlochForm decompose(const BipartiteState& state, const GeneratorBasis& basis_a,
                                  const GeneratorBasis& basis_b);
[[nodiscard]] BlochForm decompose(const BipartiteState& state);

/// Builds the operator of the Bloch form without validating it.
[[nodiscard]] CMatrix bloch_operator(const BlochForm& form, const GeneratorBasis& basis_a,
                                     const GeneratorBasis& basis_b);

/// Builds and validates rho. Throws NotAState if the triple is unphysical.
[[nodiscard]] BipartiteState reconstruct(const BlochForm& form, const GeneratorBasis& basis_a,
                                         const GeneratorBasis& basis_b, const Tolerances& tol = {});
[[nodiscard]] BipartiteState reconstruct(const BlochForm& form, const Tolerances& tol = {});

/// Bloch vectors of tr_B(rho) and tr_A(rho).
[[nodiscard]] std::pair<RVector, RVector> reduced_bloch(const BipartiteState& state);

}  // namespace qshift
