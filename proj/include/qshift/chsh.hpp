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

// CHSH observation of the shift on two qubits.
//
//   F = E(A1,B1) + E(A1,B2) + E(A2,B1) - E(A2,B2) = sum_ij beta_ij T_ij,
//   T_ij = (n1_i + n2_i) m1_j + (n1_i - n2_i) m2_j.
//
// A cyclic U maps sigma_i to sigma^f_i = U sigma_i U^dagger, so measuring rho_f
// with Bob's axes carried along by U reproduces F(rho_0, T). The protocol
// locates that carried frame from measurements alone and reads off beta^f
// and the shift.

#include <cstdint>

#include "qshift/bloch.hpp"
#include "qshift/cyclic.hpp"

namespace qshift {

struct MeasurementSettings {
    Vec3 n1 = Vec3::UnitX();  ///< Alice, A1 = n1.sigma
    Vec3 n2 = Vec3::UnitY();  ///< Alice, A2
    Vec3 m1 = Vec3::UnitX();  ///< Bob, B1
    Vec3 m2 = Vec3::UnitY();  ///< Bob, B2

    /// Throws Input unless all four axes are unit vectors within 1e-12.
    void validate() const;
};

[[nodiscard]] Mat3 measurement_matrix(const MeasurementSettings& s);

/// E(A, B) = Tr(rho (n.sigma) (x) (m.sigma)).
[[nodiscard]] double correlator(const BipartiteState& state, const Vec3& n, const Vec3& m);

/// CHSH value from the four correlators. Throws Domain for non-qubit dims.
[[nodiscard]] double expectation_F(const BipartiteState& state, const MeasurementSettings& s);

/// sum_ij beta_ij T_ij.
[[nodiscard]] double correlation_F(const RMatrix& beta, const Mat3& t);

/// R with U sigma_i U^dagger = sum_k R_ik sigma_k for U = exp(i phi/2 u.sigma):
///   R_ik = cos(phi) d_ik + sin(phi) e_ijk u_j + 2 sin^2(phi/2) u_i u_k.
[[nodiscard]] Mat3 pauli_conjugate(const Vec3& u, double phi);

/// exp(i phi/2 u.sigma).
[[nodiscard]] CMatrix su2_rotation(const Vec3& u, double phi);

/// Bob's axes carried by the Pauli rotation: B_k^f = m_k.sigma^f = (R^T m_k).sigma.
[[nodiscard]] MeasurementSettings carried_settings(const MeasurementSettings& s, const Mat3& pauli_rotation);

struct ChshStage1 {
    MeasurementSettings settings;  ///< optimal Alice axes, Bob fixed at (x, y)
    double f_max = 0.0;
};

struct ChshStage2 {
    MeasurementSettings settings;  ///< Alice fixed, Bob at the carried axes (R x, R y)
    double f = 0.0;                ///< F(rho_f, T^f) at those settings
    MeasurementSettings search_settings;  ///< Bob's optimum over all axes on rho_f
    double f_search = 0.0;
    bool fixed_axes_optimal = false;  ///< |f_search - stage1.f_max| < 1e-6
};

struct ChshTranscript {
    ChshStage1 stage1;
    ChshStage2 stage2;
    /// Column j is the Bloch axis of sigma^f_j; beta^f = beta R^T.
    Mat3 recovered_rotation = Mat3::Identity();
    Mat3 recovered_beta_f = Mat3::Zero();
    double estimated_d = 0.0;
};

struct ChshOptions {
    int restarts = 8;
    std::uint64_t seed = 0x5c45ULL;
    int max_iters = 200;
    /// Response vectors or axis cross products shorter than this make the
    /// optimum non-unique and raise AmbiguousRecovery.
    double ambiguity_tol = 1e-6;
    Tolerances tol{};
};

/// Two-stage protocol. Stage 1 maximizes F over Alice's axes on rho_0 with
/// Bob at (sigma_1, sigma_2); stage 2 keeps Alice there and searches Bob's
/// axes on rho_f. The rotation taking Bob's rho_0-optimal axes to the rho_f
/// ones is the action of U on the Pauli frame.
[[nodiscard]] ChshTranscript protocol_run(const BipartiteState& state, const CyclicUnitary& u,
                                          const ChshOptions& opts = {});

}  // namespace qshift
