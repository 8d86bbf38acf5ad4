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

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "qshift/kernels.hpp"

using namespace qshift::kernels;

TEST_SUITE("kernels") {

TEST_CASE("scalar is present and listed first") {
    const auto isas = available_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == Isa::Scalar);
    CHECK(isa_supported(Isa::Scalar));
}

TEST_CASE("every variant agrees with the scalar reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // Lengths straddle the vector width and the unrolled stride.
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 257u, 1000u}) {
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = u(rng);
        for (auto& v : y) v = u(rng);
        double naive = 0.0;
        for (std::size_t i = 0; i < n; ++i) naive += x[i] * y[i];
        const double ref = dot_scalar(x, y);
        CHECK(ref == doctest::Approx(naive).epsilon(1e-14));
        for (Isa isa : available_isas()) {
            CAPTURE(isa_name(isa));
            CAPTURE(n);
            CHECK(std::abs(dot(isa, x, y) - ref) <= 1e-13 * (1.0 + std::abs(ref)) + 1e-15 * n);
        }
    }
}

TEST_CASE("unsupported variants fall back to scalar") {
    const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
    CHECK(dot(Isa::Neon, x, y) == 32.0);
    CHECK(dot(Isa::Avx2, x, y) == 32.0);
    CHECK(dot(x, y) == 32.0);
}

TEST_CASE("isa names") {
    CHECK(isa_name(Isa::Scalar) == "scalar");
    CHECK(isa_name(Isa::Avx2) == "avx2");
    CHECK(isa_name(Isa::Neon) == "neon");
}

}
