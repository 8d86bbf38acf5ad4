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

// Compiled with -mavx2 -mfma. Only reached through the runtime dispatcher.

#include <immintrin.h>

#include "qshift/kernels.hpp"

namespace qshift::kernels {

double dot_avx2(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size() < y.size() ? x.size() : y.size();
    const double* px = x.data();
    const double* py = y.data();

    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 4), _mm256_loadu_pd(py + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
        i += 4;
    }
    acc0 = _mm256_add_pd(acc0, acc1);

    // horizontal sum
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    double acc = _mm_cvtsd_f64(_mm_add_sd(lo, shuf));

    for (; i < n; ++i) acc += px[i] * py[i];
    return acc;
}

}  // namespace qshift::kernels
