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

// Seeded random sources. Every stream element i is drawn from its own
// generator seeded with substream_seed(seed, i), so streams can be split
// across workers and still produce identical output.

#include <cstdint>
#include <random>

#include "qshift/common.hpp"

namespace qshift {

using Rng = std::mt19937_64;

/// splitmix64 finalizer of (seed, index).
[[nodiscard]] std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

[[nodiscard]] inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(substream_seed(seed, index));
}

/// Matrix of iid standard complex Gaussians (real and imaginary parts N(0, 1/2)).
[[nodiscard]] CMatrix complex_gaussian(int rows, int cols, Rng& rng);

/// Haar-distributed n x n unitary (QR of a Ginibre matrix with phase fix).
[[nodiscard]] CMatrix haar_unitary(int n, Rng& rng);

/// Haar-uniform unit vector in C^n.
[[nodiscard]] CVector haar_pure_state(int n, Rng& rng);

/// Uniform random unit vector in R^3.
[[nodiscard]] Vec3 random_unit_vector(Rng& rng);

}  // namespace qshift
