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

// Separability analysis built on the maximal shift: the 1/sqrt(2) bound for
// two-qubit separable states, the PPT test, the zero-shift (outer-product
// correlation) class and the pure-state CHSH relation.

#include <optional>
#include <string_view>

#include "qshift/bloch.hpp"
#include "qshift/cyclic.hpp"

namespace qshift {

/// 1/sqrt(2): largest shift a separable two-qubit state can show.
inline constexpr double kSeparableShiftBound = 0.70710678118654752440;

struct PptResult {
    double min_eigenvalue = 0.0;  ///< of the partial transpose over B
    bool entangled = false;       ///< min_eigenvalue < -tol
    bool exact = false;           ///< true for dims (2,2), (2,3), (3,2): flag is iff
};

[[nodiscard]] PptResult ppt_test(const BipartiteState& state, double tol = 1e-10);

struct TheoremFit {
    bool theorem_class = false;
    double alpha = 0.0;     ///< least-squares alpha clamped to [0, 1]
    double residual = 0.0;  ///< max |beta - alpha r^A r^B^T|
};

/// Is beta within `tol` of alpha r^A (r^B)^T for some alpha in [0, 1]? Zero
/// local Bloch vectors with nonzero beta never qualify.
[[nodiscard]] TheoremFit theorem_class_fit(const BlochForm& form, double tol = 1e-8);

enum class Classification { ProductLike, ClassicallyCorrelatedCompatible, EntangledCertified };

[[nodiscard]] std::string_view to_string(Classification c) noexcept;

struct DetectionReport {
    double d_max = 0.0;
    bool bound_violated = false;  ///< two-qubit only: d_max > 1/sqrt(2) + tol.bound
    bool ppt_negative = false;
    double min_pt_eigenvalue = 0.0;
    std::optional<double> gisin_Bmax;  ///< pure two-qubit states only
    bool theorem_class = false;
    Classification classification = Classification::ClassicallyCorrelatedCompatible;
    // Supporting detail; not part of the classification contract.
    bool ppt_exact = false;
    double theorem_alpha = 0.0;
    DmaxMethod method = DmaxMethod::MultiStart;
    bool certified = true;
};

/// entangled-certified iff the bound is violated or the partial transpose is
/// negative; product-like iff the correlation matrix is of outer-product form;
/// classically-correlated-compatible otherwise.
[[nodiscard]] DetectionReport detect(const BipartiteState& state, const DmaxOptions& opts = {});

/// 2 sqrt(1 + d_max^2) for a pure two-qubit state. Throws Domain otherwise.
[[nodiscard]] double gisin_bmax(const BipartiteState& state, const DmaxOptions& opts = {});

/// 2 sqrt(1 + 4 |k1 k2|^2), the maximal CHSH value of k1|00> + k2|11>.
[[nodiscard]] double gisin_bmax_schmidt(cplx k1, cplx k2);

}  // namespace qshift
