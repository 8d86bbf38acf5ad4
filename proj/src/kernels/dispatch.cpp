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

#include <cstdlib>
#include <string_view>

#include "qshift/kernels.hpp"

namespace qshift::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(QSHIFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa pick_isa() noexcept {
    if (const char* env = std::getenv("QSHIFT_ISA")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::Scalar;
        if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
        if (want == "neon" && isa_supported(Isa::Neon)) return Isa::Neon;
    }
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: {
            static const bool has = cpu_has_avx2();
            return has;
        }
        case Isa::Neon:
#if defined(QSHIFT_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::Scalar};
    for (Isa isa : {Isa::Avx2, Isa::Neon})
        if (isa_supported(isa)) out.push_back(isa);
    return out;
}

Isa active_isa() noexcept {
    static const Isa isa = pick_isa();
    return isa;
}

double dot(Isa isa, std::span<const double> x, std::span<const double> y) noexcept {
    switch (isa) {
#if defined(QSHIFT_HAVE_AVX2)
        case Isa::Avx2:
            if (isa_supported(Isa::Avx2)) return dot_avx2(x, y);
            break;
#endif
#if defined(QSHIFT_HAVE_NEON)
        case Isa::Neon: return dot_neon(x, y);
#endif
        default: break;
    }
    return dot_scalar(x, y);
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    return dot(active_isa(), x, y);
}

}  // namespace qshift::kernels
