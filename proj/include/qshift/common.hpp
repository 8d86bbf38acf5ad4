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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qshift {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Subsystem dimensions of a bipartite Hilbert space C^a (x) C^b.
struct Dims {
    int a = 2;
    int b = 2;

    [[nodiscard]] constexpr int total() const noexcept { return a * b; }
    friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

enum class ErrorKind {
    InvalidDimension,
    InvalidOperator,
    NotAState,
    NotCyclic,
    Normalization,
    Domain,
    InternalConsistency,
    AmbiguousRecovery,
    Input,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Numerical tolerances shared across modules. All absolute.
struct Tolerances {
    double herm = 1e-10;      ///< entrywise max |M - M^dagger|
    double unitary = 1e-10;   ///< entrywise max |U^dagger U - I|
    double trace = 1e-10;     ///< |Tr(rho) - 1|
    double psd = 1e-10;       ///< smallest admissible eigenvalue is -psd
    double cyclic = 1e-9;     ///< entrywise max |[rho_B, U]|
    double eps_deg = 1e-9;    ///< relative eigenvalue merge threshold for rho_B
    double bound = 1e-9;      ///< margin above 1/sqrt(2) before certifying entanglement
    double radicand = 1e-12;  ///< negative radicands above -radicand clamp to zero

    /// Throws Error(Input) if any tolerance is not strictly positive.
    void validate() const;
};

}  // namespace qshift
