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

#include <arm_neon.h>

#include "qshift/kernels.hpp"

namespace qshift::kernels {

double dot_neon(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size() < y.size() ? x.size() : y.size();
    const double* px = x.data();
    const double* py = y.data();

    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(px + i), vld1q_f64(py + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(px + i + 2), vld1q_f64(py + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += px[i] * py[i];
    return acc;
}

}  // namespace qshift::kernels
