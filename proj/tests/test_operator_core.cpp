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

#include <random>

#include "oracles.hpp"
#include "qshift/operator_core.hpp"

using namespace qshift;

TEST_SUITE("operator_core") {

TEST_CASE("Gell-Mann generators are Hermitian, traceless, orthogonal") {
    for (int n : {2, 3, 4, 5}) {
        const auto basis = gell_mann_basis(n);
        REQUIRE(basis.size() == n * n - 1);
        for (int i = 0; i < basis.size(); ++i) {
            CHECK(is_hermitian(basis[i], 1e-14));
            CHECK(std::abs(basis[i].trace()) < 1e-14);
            for (int j = 0; j < basis.size(); ++j) {
                const cplx t = (basis[i] * basis[j]).trace();
                CHECK(std::abs(t - (i == j ? 2.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("N=2 generators are the Pauli matrices in order") {
    const auto basis = gell_mann_basis(2);
    for (int k = 0; k < 3; ++k) {
        CHECK(max_abs_diff(basis[k], oracle::sigma(k)) < 1e-15);
        CHECK(max_abs_diff(pauli(k), oracle::sigma(k)) < 1e-15);
    }
}

TEST_CASE("sparse entries reproduce the dense generator") {
    for (int n : {2, 3, 4}) {
        const auto& basis = cached_basis(n);
        for (int i = 0; i < basis.size(); ++i) {
            CMatrix m = CMatrix::Zero(n, n);
            for (const auto& e : basis.sparse(i)) m(e.row, e.col) += e.value;
            CHECK(max_abs_diff(m, basis[i]) < 1e-15);
        }
    }
}

TEST_CASE("coefficients invert the expansion") {
    std::mt19937_64 rng(3);
    const auto basis = gell_mann_basis(3);
    const CMatrix h0 = oracle::random_state(3, 3, rng);
    const CMatrix h = h0 - CMatrix::Identity(3, 3) * (h0.trace() / 3.0);
    const RVector c = basis.coefficients(h);
    CMatrix back = CMatrix::Zero(3, 3);
    for (int i = 0; i < basis.size(); ++i) back += c(i) * basis[i];
    CHECK(max_abs_diff(back, h) < 1e-13);
}

TEST_CASE("dimension below 2 is rejected") {
    CHECK_THROWS_AS((void)gell_mann_basis(1), Error);
    try {
        (void)gell_mann_basis(0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidDimension);
    }
}

TEST_CASE("tensor matches the index-level Kronecker product") {
    std::mt19937_64 rng(11);
    const CMatrix a = oracle::random_unitary(2, rng);
    const CMatrix b = oracle::random_unitary(3, rng);
    CHECK(max_abs_diff(tensor(a, b), oracle::kron(a, b)) < 1e-15);
}

TEST_CASE("partial traces match the oracle") {
    std::mt19937_64 rng(12);
    for (auto [na, nb] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        const CMatrix rho = oracle::random_state(na * nb, 3, rng);
        const Dims d{na, nb};
        CHECK(max_abs_diff(partial_trace(rho, d, Subsystem::B), oracle::trace_out_a(rho, na, nb)) < 1e-14);
        CHECK(max_abs_diff(partial_trace(rho, d, Subsystem::A), oracle::trace_out_b(rho, na, nb)) < 1e-14);
    }
}

TEST_CASE("partial transpose of a product transposes the B factor") {
    std::mt19937_64 rng(13);
    const CMatrix a = oracle::random_state(2, 2, rng);
    const CMatrix b = oracle::random_state(3, 2, rng);
    CHECK(max_abs_diff(partial_transpose_b(oracle::kron(a, b), {2, 3}), oracle::kron(a, b.transpose())) < 1e-15);
}

TEST_CASE("Hermitian eigendecomposition is ascending and reconstructs") {
    std::mt19937_64 rng(14);
    const CMatrix h = oracle::random_state(4, 4, rng);
    const auto eig = hermitian_eig(h);
    for (int i = 1; i < 4; ++i) CHECK(eig.values(i) >= eig.values(i - 1));
    CHECK(is_unitary(eig.vectors, 1e-12));
    const CMatrix back = eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    CHECK(max_abs_diff(back, h) < 1e-13);
    CMatrix bad = h;
    bad(0, 1) += 0.1;
    CHECK_THROWS_AS((void)hermitian_eig(bad), Error);
}

TEST_CASE("exp of i times Hermitian is unitary and matches the SU(2) formula") {
    const Vec3 u = Vec3(1, 2, 2) / 3.0;
    const double phi = 0.7;
    CMatrix h = (u(0) * oracle::sigma(0) + u(1) * oracle::sigma(1) + u(2) * oracle::sigma(2)) * (phi / 2);
    CHECK(max_abs_diff(exp_i_hermitian(h), oracle::su2(u, phi)) < 1e-14);
}

TEST_CASE("apply_local_b equals explicit conjugation by I (x) U") {
    std::mt19937_64 rng(15);
    const CMatrix rho = oracle::random_state(6, 6, rng);
    const CMatrix u = oracle::random_unitary(3, rng);
    const CMatrix big = oracle::kron(CMatrix::Identity(2, 2), u);
    CHECK(max_abs_diff(apply_local_b(rho, {2, 3}, u), big * rho * big.adjoint()) < 1e-14);
}

TEST_CASE("inner products") {
    std::mt19937_64 rng(16);
    const CMatrix a = oracle::random_state(4, 4, rng);
    const CMatrix b = oracle::random_state(4, 4, rng);
    CHECK(hs_inner(a, b) == doctest::Approx((a.adjoint() * b).trace().real()).epsilon(1e-13));
    RMatrix x = RMatrix::Random(3, 8), y = RMatrix::Random(3, 8);
    CHECK(frobenius_inner(x, y) == doctest::Approx((x.array() * y.array()).sum()).epsilon(1e-13));
}

TEST_CASE("unitary and Hermitian predicates") {
    CHECK(is_unitary(oracle::sigma(1)));
    CHECK_FALSE(is_unitary(CMatrix::Identity(2, 2) * 2.0));
    CHECK(is_hermitian(oracle::sigma(1)));
    CHECK_FALSE(is_hermitian(oracle::su2(Vec3::UnitZ(), 1.0)));
}

}
