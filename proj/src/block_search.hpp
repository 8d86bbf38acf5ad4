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

// Multi-start maximization of the shift over the commutant of rho_B.

#include <cstdint>
#include <vector>

#include "qshift/common.hpp"
#include "qshift/cyclic.hpp"

namespace qshift::detail {

struct SearchConfig {
    int restarts = 16;
    int max_iters = 500;
    double tol_improve = 1e-10;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct SearchOutcome {
    std::vector<CMatrix> blocks;  ///< block unitaries of the best restart
    double d = 0.0;
    int converged_restarts = 0;
    int iterations = 0;
    int evaluations = 0;
    double gradient_norm = 0.0;
    int best_restart = -1;
};

/// Riemannian conjugate-gradient descent of Tr(rho_0 rho_f) over block-unitary
/// W (U = V W V^dagger), restarted from Haar-random blocks.
[[nodiscard]] SearchOutcome search_commutant(const CMatrix& rho, Dims dims,
                                             const CommutantStructure& structure,
                                             const SearchConfig& cfg);

}  // namespace qshift::detail
