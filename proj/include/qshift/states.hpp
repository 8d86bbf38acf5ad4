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

// Factories and seeded samplers for the state families under study.

#include <cstdint>
#include <utility>
#include <vector>

#include "qshift/bloch.hpp"
#include "qshift/common.hpp"
#include "qshift/random.hpp"

namespace qshift {

/// One product term p |a><a| (x) |b><b| of a separable ensemble.
struct EnsembleTerm {
    double weight;
    CVector a;
    CVector b;
};

struct Ensemble {
    std::vector<EnsembleTerm> terms;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(terms.size()); }
    /// sum_l p_l r^{A_l} (r^{B_l})^T, the correlation matrix of the mixture.
    [[nodiscard]] RMatrix beta_from_terms() const;
};

/// k1|00> + k2|11>. Throws Normalization unless |k1|^2 + |k2|^2 = 1 within 1e-12.
[[nodiscard]] BipartiteState schmidt_state(cplx k1, cplx k2);

/// (|00> + |11>)/sqrt(2).
[[nodiscard]] BipartiteState bell_state();

/// p |Psi-><Psi-| + (1 - p) I/4. Throws NotAState for p outside [-1/3, 1].
[[nodiscard]] BipartiteState werner_state(double p);

/// (|00><00| + |11><11|)/2.
[[nodiscard]] BipartiteState classically_correlated_5050();

[[nodiscard]] BipartiteState maximally_mixed(Dims dims);

/// rho_A (x) rho_B.
[[nodiscard]] BipartiteState product_state(const CMatrix& rho_a, const CMatrix& rho_b);

/// |psi><psi| for a normalized vector on C^(N_A N_B).
[[nodiscard]] BipartiteState pure_state(const CVector& psi, Dims dims);

/// Mixture of product terms. Throws Input for an empty list, a non-positive
/// weight or mismatched local dimensions, Normalization if weights do not sum
/// to 1 or a local state is not normalized (both within 1e-12).
[[nodiscard]] std::pair<BipartiteState, Ensemble> ensemble_state(std::vector<EnsembleTerm> terms);

/// Exchanges the roles of A and B.
[[nodiscard]] BipartiteState swap_subsystems(const BipartiteState& state);

struct SeparableSamplerConfig {
    Dims dims{2, 2};
    int min_terms = 2;
    int max_terms = 8;
};

struct SeparableSample {
    BipartiteState state;
    Ensemble ensemble;
};

/// Deterministic stream: element i uses its own sub-stream of `seed`.
/// Term count uniform in [min_terms, max_terms], weights flat on the simplex,
/// local pure states Haar-uniform.
class SeparableSampler {
public:
    explicit SeparableSampler(std::uint64_t seed, SeparableSamplerConfig cfg = {});

    [[nodiscard]] SeparableSample at(std::uint64_t index) const;
    [[nodiscard]] SeparableSample next() { return at(cursor_++); }

private:
    std::uint64_t seed_;
    SeparableSamplerConfig cfg_;
    std::uint64_t cursor_ = 0;
};

[[nodiscard]] std::vector<SeparableSample> sample_separable(std::uint64_t seed, int min_terms,
                                                            int max_terms, int count);

/// rho = G G^dagger / Tr(G G^dagger), G complex Gaussian of shape (N_A N_B) x rank.
class RandomStateSampler {
public:
    RandomStateSampler(std::uint64_t seed, Dims dims, int rank);

    [[nodiscard]] BipartiteState at(std::uint64_t index) const;
    [[nodiscard]] BipartiteState next() { return at(cursor_++); }

private:
    std::uint64_t seed_;
    Dims dims_;
    int rank_;
    std::uint64_t cursor_ = 0;
};

[[nodiscard]] std::vector<BipartiteState> sample_random_state(std::uint64_t seed, Dims dims, int rank,
                                                              int count);

/// One Ginibre draw from an explicit generator.
[[nodiscard]] BipartiteState random_density_matrix(Dims dims, int rank, Rng& rng);

}  // namespace qshift
