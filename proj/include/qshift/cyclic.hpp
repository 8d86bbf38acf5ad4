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

// Local cyclic operations: unitaries U on subsystem B with [rho_B, U] = 0.
// They leave both reduced states unchanged but can move the joint state;
// the size of that move is the shift
//
//   d(rho_0, U) = sqrt(Tr(rho_0^2) - Tr(rho_0 rho_f)),   rho_f = (I (x) U) rho_0 (I (x) U)^dagger
//              = sqrt((N_A-1)(N_B-1)/(N_A N_B) (|beta|^2 - sum_ij beta_ij beta^f_ij)).
//
// The commutant of rho_B is characterized through its eigendecomposition:
// U commutes with rho_B iff it is block diagonal over the eigenspaces.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qshift/bloch.hpp"
#include "qshift/common.hpp"

namespace qshift {

struct EigenBlock {
    double eigenvalue;         ///< mean eigenvalue of the group
    std::vector<int> indices;  ///< columns of the eigenbasis spanning the eigenspace
};

/// Eigenspace structure of rho_B.
struct CommutantStructure {
    CMatrix eigenbasis;  ///< columns are eigenvectors, ascending eigenvalues
    RVector eigenvalues;
    std::vector<EigenBlock> blocks;
    double eps_deg = 1e-9;

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(eigenvalues.size()); }
    [[nodiscard]] std::vector<int> block_sizes() const;
    /// Real dimension of the commutant modulo global phase.
    [[nodiscard]] int parameter_count() const;
};

/// Eigenvalues within eps_deg * max(1, lambda_max) of their neighbour share a block.
[[nodiscard]] CommutantStructure commutant_of(const CMatrix& rho_b, double eps_deg = 1e-9);
[[nodiscard]] CommutantStructure commutant_basis(const BipartiteState& state, double eps_deg = 1e-9);

struct CyclicBlock {
    double eigenvalue;
    std::vector<int> indices;
    CMatrix unitary;
};

/// A unitary on B assembled as V (+)_k W_k V^dagger, V the eigenbasis of rho_B.
class CyclicUnitary {
public:
    [[nodiscard]] const CMatrix& matrix() const noexcept { return u_; }
    [[nodiscard]] const std::vector<CyclicBlock>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const CMatrix& eigenbasis() const noexcept { return basis_; }
    [[nodiscard]] std::uint64_t reference_state_id() const noexcept { return reference_id_; }
    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(u_.rows()); }

    /// Entrywise max |[rho_b, U]|.
    [[nodiscard]] double commutator_norm(const CMatrix& rho_b) const;

private:
    CyclicUnitary(CMatrix u, std::vector<CyclicBlock> blocks, CMatrix basis, std::uint64_t ref);

    friend CyclicUnitary make_cyclic(const CommutantStructure&, std::span<const CMatrix>,
                                     std::uint64_t, const Tolerances&);

    CMatrix u_;
    std::vector<CyclicBlock> blocks_;
    CMatrix basis_;
    std::uint64_t reference_id_ = 0;
};

/// Assembles U from one unitary per eigenspace block. Throws InvalidDimension
/// if the block count or shapes do not match and InvalidOperator if a block
/// is not unitary.
[[nodiscard]] CyclicUnitary make_cyclic(const CommutantStructure& structure,
                                        std::span<const CMatrix> block_unitaries,
                                        std::uint64_t reference_state_id,
                                        const Tolerances& tol = {});
[[nodiscard]] CyclicUnitary make_cyclic(const BipartiteState& state,
                                        std::span<const CMatrix> block_unitaries,
                                        const Tolerances& tol = {});

[[nodiscard]] CyclicUnitary identity_cyclic(const BipartiteState& state, const Tolerances& tol = {});

/// Wraps a given unitary on B, splitting it into eigenspace blocks. Throws
/// NotCyclic if it does not commute with rho_B within tol.cyclic.
[[nodiscard]] CyclicUnitary cyclic_from_matrix(const BipartiteState& state, const CMatrix& u,
                                               const Tolerances& tol = {});

/// (N_A - 1)(N_B - 1) / (N_A N_B).
[[nodiscard]] double correlation_prefactor(Dims dims);

/// R_kj = Tr(l_k U l_j U^dagger) / 2, so that U l_j U^dagger = sum_k R_kj l_k.
[[nodiscard]] RMatrix conjugation_matrix(const CMatrix& u, const GeneratorBasis& basis);

/// sqrt(Tr(rho_0^2) - Tr(rho_0 rho_f)). Throws NotCyclic if U does not
/// commute with rho_B, InternalConsistency on a radicand below -tol.radicand.
[[nodiscard]] double shift_direct(const BipartiteState& state, const CyclicUnitary& u,
                                  const Tolerances& tol = {});

/// beta^f = beta R^T with R = conjugation_matrix(U).
[[nodiscard]] RMatrix beta_final(const BlochForm& form, const CyclicUnitary& u);

/// The shift evaluated from the correlation matrices alone.
[[nodiscard]] double shift_correlation(const BlochForm& form, const CyclicUnitary& u,
                                       const Tolerances& tol = {});

enum class ShiftFormula { Direct, Correlation };
enum class DmaxMethod { ClosedFormPhase, ClosedFormRotation, MultiStart };

[[nodiscard]] std::string_view to_string(ShiftFormula f) noexcept;
[[nodiscard]] std::string_view to_string(DmaxMethod m) noexcept;

struct OptimizerDiagnostics {
    int restarts = 0;
    int converged_restarts = 0;
    int iterations = 0;   ///< summed over restarts
    int evaluations = 0;  ///< objective evaluations, summed over restarts
    double gradient_norm = 0.0;  ///< Riemannian gradient norm at the returned point
    int best_restart = -1;
};

struct ShiftResult {
    double d = 0.0;
    ShiftFormula formula = ShiftFormula::Direct;
    CyclicUnitary unitary;
    double cross_check_residual = 0.0;  ///< |d_direct - d_correlation| at `unitary`
    DmaxMethod method = DmaxMethod::MultiStart;
    bool certified = true;
    OptimizerDiagnostics diagnostics;
};

struct DmaxOptions {
    int restarts = 16;
    int max_iters = 500;
    double tol_improve = 1e-10;  ///< converged when d improves by less over one iteration
    std::uint64_t seed = 0x9d5a1c3bULL;
    bool closed_form = true;  ///< use the N_B = 2 closed forms when applicable
    int workers = 1;          ///< threads for independent restarts
    Tolerances tol{};
};

/// Maximum shift over all cyclic unitaries. For N_B = 2 the closed forms are
/// used unless disabled; otherwise a multi-start search over block unitaries.
/// The returned d is cross-checked against the other formula; a residual
/// above 1e-9 throws InternalConsistency.
[[nodiscard]] ShiftResult d_max(const BipartiteState& state, const DmaxOptions& opts = {});

/// The multi-start search alone, for any dimensions.
[[nodiscard]] ShiftResult d_max_search(const BipartiteState& state, const DmaxOptions& opts = {});

/// The N_B = 2 closed forms alone. Throws Domain if N_B != 2.
[[nodiscard]] ShiftResult d_max_closed_form(const BipartiteState& state, const DmaxOptions& opts = {});

}  // namespace qshift
