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

// Real dot-product kernels. Every inner product the shift computations need
// (Tr(rho_0 rho_f) for Hermitian operators, sum_ij beta_ij beta^f_ij) reduces
// to a flat dot product over contiguous doubles, so this is the one hot loop
// worth vectorizing. The scalar version is the reference; SIMD variants are
// selected at runtime and tested for equivalence against it.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qshift::kernels {

enum class Isa { Scalar, Avx2, Neon };

[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

/// Reference implementation. Sums in index order.
[[nodiscard]] double dot_scalar(std::span<const double> x, std::span<const double> y) noexcept;

#if defined(__x86_64__)
/// Requires a CPU with AVX2 and FMA; call only when `isa_supported(Isa::Avx2)`.
[[nodiscard]] double dot_avx2(std::span<const double> x, std::span<const double> y) noexcept;
#endif
#if defined(__aarch64__)
[[nodiscard]] double dot_neon(std::span<const double> x, std::span<const double> y) noexcept;
#endif

/// True if the variant was compiled in and the running CPU supports it.
[[nodiscard]] bool isa_supported(Isa isa) noexcept;

/// Variants usable on this machine, scalar first.
[[nodiscard]] std::vector<Isa> available_isas();

/// Variant picked at first use: the widest supported one, unless the
/// QSHIFT_ISA environment variable names another (`scalar`, `avx2`, `neon`).
[[nodiscard]] Isa active_isa() noexcept;

/// Dispatches to a specific variant. Falls back to scalar if unsupported.
[[nodiscard]] double dot(Isa isa, std::span<const double> x, std::span<const double> y) noexcept;

/// Dispatches to `active_isa()`.
[[nodiscard]] double dot(std::span<const double> x, std::span<const double> y) noexcept;

}  // namespace qshift::kernels
