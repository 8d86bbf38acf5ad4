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

#include "qshift/random.hpp"

#include <cmath>

namespace qshift {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CMatrix complex_gaussian(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix g(rows, cols);
    // Fill in row-major order so the stream does not depend on storage order.
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = cplx(re, im);
        }
    return g;
}

CMatrix haar_unitary(int n, Rng& rng) {
    const CMatrix g = complex_gaussian(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

CVector haar_pure_state(int n, Rng& rng) {
    CVector v = complex_gaussian(n, 1, rng).col(0);
    return v / v.norm();
}

Vec3 random_unit_vector(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec3 v;
    do {
        const double x = normal(rng);
        const double y = normal(rng);
        const double z = normal(rng);
        v = Vec3(x, y, z);
    } while (v.norm() < 1e-12);
    return v.normalized();
}

}  // namespace qshift
