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

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qshift/bloch.hpp"
#include "qshift/cyclic.hpp"
#include "qshift/states.hpp"

using namespace qshift;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Input;
}

BipartiteState random_state(Dims d, int rank, std::mt19937_64& rng) {
    return BipartiteState::from_matrix(oracle::random_state(d.total(), rank, rng), d);
}

}  // namespace

TEST_SUITE("cyclic") {

TEST_CASE("commutant structure") {
    CMatrix diag = CMatrix::Zero(3, 3);
    diag(0, 0) = 0.2;
    diag(1, 1) = 0.5;
    diag(2, 2) = 0.3;
    auto s = commutant_of(diag);
    CHECK(s.block_sizes() == std::vector<int>{1, 1, 1});
    CHECK(s.parameter_count() == 2);  // global phase excluded
    CHECK(s.eigenvalues(0) == doctest::Approx(0.2));

    diag(2, 2) = 0.2 + 1e-12;
    s = commutant_of(diag);
    CHECK(s.block_sizes() == std::vector<int>{2, 1});
    CHECK(s.parameter_count() == 4);

    s = commutant_of(CMatrix::Identity(2, 2) / 2.0);
    CHECK(s.block_sizes() == std::vector<int>{2});
    CHECK(s.parameter_count() == 3);
}

TEST_CASE("shift_direct matches the matrix oracle") {
    std::mt19937_64 rng(31);
    for (auto d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto state = random_state(d, 1 + trial % d.total(), rng);
            const CMatrix u = oracle::random_commuting_unitary(state.reduced(Subsystem::B), rng);
            const auto cu = cyclic_from_matrix(state, u);
            CHECK(shift_direct(state, cu) == doctest::Approx(oracle::shift(state.matrix(), d.a, u)).epsilon(1e-9));
        }
    }
}

TEST_CASE("correlation formula equals the direct formula") {
    std::mt19937_64 rng(32);
    for (auto d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}, Dims{3, 3}}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto state = random_state(d, 1 + trial % 3, rng);
            const auto cu = cyclic_from_matrix(state, oracle::random_commuting_unitary(state.reduced(Subsystem::B), rng));
            CHECK(std::abs(shift_direct(state, cu) - shift_correlation(decompose(state), cu)) < 1e-9);
        }
    }
}

TEST_CASE("cyclic operations keep |beta| and rho_B") {
    std::mt19937_64 rng(33);
    for (auto d : {Dims{2, 2}, Dims{2, 3}}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto state = random_state(d, 2, rng);
            const CMatrix u = oracle::random_commuting_unitary(state.reduced(Subsystem::B), rng);
            const auto cu = cyclic_from_matrix(state, u);
            const auto form = decompose(state);
            CHECK(beta_final(form, cu).norm() == doctest::Approx(form.beta_norm()).epsilon(1e-10));
            const CMatrix rf = apply_local_b(state.matrix(), d, cu.matrix());
            CHECK(max_abs_diff(oracle::trace_out_a(rf, d.a, d.b), state.reduced(Subsystem::B)) < 1e-10);
        }
    }
}

TEST_CASE("beta_final is the Bloch form of the final state") {
    std::mt19937_64 rng(34);
    const auto state = random_state({2, 3}, 3, rng);
    const auto cu = cyclic_from_matrix(state, oracle::random_commuting_unitary(state.reduced(Subsystem::B), rng));
    const auto final_state = BipartiteState::from_matrix(apply_local_b(state.matrix(), {2, 3}, cu.matrix()), {2, 3});
    CHECK((beta_final(decompose(state), cu) - decompose(final_state).beta).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("prefactor") {
    CHECK(correlation_prefactor({2, 2}) == doctest::Approx(0.25));
    CHECK(correlation_prefactor({2, 3}) == doctest::Approx(2.0 / 6.0));
    CHECK(correlation_prefactor({3, 3}) == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("identity gives zero shift") {
    std::mt19937_64 rng(35);
    const auto state = random_state({2, 3}, 2, rng);
    CHECK(shift_direct(state, identity_cyclic(state)) < 1e-12);
}

TEST_CASE("non-commuting unitaries are rejected") {
    const auto state = schmidt_state(0.6, 0.8);
    const CMatrix u = oracle::su2(Vec3::UnitX(), 1.0);
    CHECK(kind_of([&] { (void)cyclic_from_matrix(state, u); }) == ErrorKind::NotCyclic);
    CHECK(kind_of([&] { (void)cyclic_from_matrix(state, CMatrix::Identity(2, 2) * 1.1); }) ==
          ErrorKind::InvalidOperator);
}

TEST_CASE("cyclic unitary bound to another state is rejected") {
    const auto a = schmidt_state(0.6, 0.8);
    const auto b = product_state(CMatrix::Identity(2, 2) / 2.0,
                                 (CMatrix(2, 2) << 0.5, 0.5, 0.5, 0.5).finished());
    const auto cu = cyclic_from_matrix(a, oracle::su2(Vec3::UnitZ(), 1.0));
    CHECK(kind_of([&] { (void)shift_direct(b, cu); }) == ErrorKind::NotCyclic);
}

TEST_CASE("pure-state law for a phase about z") {
    for (double k1 : {0.0, 0.3, 0.6, 1.0 / std::sqrt(2.0), 0.95, 1.0}) {
        const double k2 = std::sqrt(1 - k1 * k1);
        const auto state = schmidt_state(k1, k2);
        for (double phi : {0.0, 0.5, 1.0, 2.0, std::numbers::pi, 5.0}) {
            const auto cu = cyclic_from_matrix(state, oracle::su2(Vec3::UnitZ(), phi));
            CHECK(shift_direct(state, cu) ==
                  doctest::Approx(2 * std::abs(k1 * k2 * std::sin(phi / 2))).epsilon(1e-9));
        }
    }
}

TEST_CASE("d_max closed forms on known states") {
    CHECK(d_max(schmidt_state(0.6, 0.8)).d == doctest::Approx(0.96).epsilon(1e-9));
    CHECK(d_max(bell_state()).d == doctest::Approx(1.0).epsilon(1e-9));
    const auto cc = d_max(classically_correlated_5050());
    CHECK(cc.d == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(cc.method == DmaxMethod::ClosedFormRotation);
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        const auto r = d_max(werner_state(p));
        CHECK(r.d == doctest::Approx(p).epsilon(1e-9));
        CHECK(r.method == DmaxMethod::ClosedFormRotation);
        CHECK(r.cross_check_residual < 1e-9);
    }
    CHECK(d_max(maximally_mixed({2, 2})).d < 1e-12);
}

TEST_CASE("returned unitary attains the reported d") {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 20; ++trial) {
        const auto state = random_state({2, 2}, 1 + trial % 4, rng);
        const auto r = d_max(state);
        CHECK(r.unitary.commutator_norm(state.reduced(Subsystem::B)) < 1e-9);
        CHECK(oracle::shift(state.matrix(), 2, r.unitary.matrix()) == doctest::Approx(r.d).epsilon(1e-9));
    }
}

TEST_CASE("closed form agrees with the search on random two-qubit states") {
    std::mt19937_64 rng(37);
    DmaxOptions search;
    search.closed_form = false;
    for (int trial = 0; trial < 200; ++trial) {
        const auto state = random_state({2, 2}, 1 + trial % 4, rng);
        const auto closed = d_max_closed_form(state);
        const auto found = d_max_search(state, search);
        CAPTURE(trial);
        CHECK(found.method == DmaxMethod::MultiStart);
        CHECK(std::abs(closed.d - found.d) < 1e-6);
    }
}

TEST_CASE("closed form agrees with the search on rho_B = I/2 states") {
    DmaxOptions search;
    search.closed_form = false;
    for (double p : {0.2, 0.5, 0.9}) {
        CHECK(std::abs(d_max_closed_form(werner_state(p)).d - d_max_search(werner_state(p), search).d) < 1e-6);
    }
    const auto cc = classically_correlated_5050();
    CHECK(std::abs(d_max_closed_form(cc).d - d_max_search(cc, search).d) < 1e-6);
}

TEST_CASE("search dominates random cyclic samples beyond qubits") {
    std::mt19937_64 rng(38);
    for (auto d : {Dims{2, 3}, Dims{3, 3}}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto state = random_state(d, 2, rng);
            const auto r = d_max(state);
            CHECK(r.method == DmaxMethod::MultiStart);
            CHECK(r.cross_check_residual < 1e-9);
            double best = 0;
            for (int k = 0; k < 200; ++k)
                best = std::max(best, oracle::shift(state.matrix(), d.a,
                                                    oracle::random_commuting_unitary(state.reduced(Subsystem::B), rng)));
            CHECK(r.d >= best - 1e-9);
        }
    }
}

TEST_CASE("degenerate rho_B in dimension 3") {
    // |psi> = (|00> + |11> + |22>)/sqrt(3): rho_B = I/3, d_max = 1 (any permutation-free U).
    CVector psi = CVector::Zero(9);
    psi(0) = psi(4) = psi(8) = 1 / std::sqrt(3.0);
    const auto state = pure_state(psi, {3, 3});
    const auto r = d_max(state);
    CHECK(commutant_basis(state).block_sizes() == std::vector<int>{3});
    CHECK(r.d == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("product states have zero d_max") {
    std::mt19937_64 rng(39);
    for (auto d : {Dims{2, 2}, Dims{2, 3}}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto state = product_state(oracle::random_state(d.a, 2, rng), oracle::random_state(d.b, 2, rng));
            CHECK(d_max(state).d < 1e-8);
        }
    }
}

TEST_CASE("closed form requires a qubit on B") {
    std::mt19937_64 rng(40);
    const auto state = random_state({2, 3}, 2, rng);
    CHECK(kind_of([&] { (void)d_max_closed_form(state); }) == ErrorKind::Domain);
}

TEST_CASE("search is deterministic and independent of worker count") {
    std::mt19937_64 rng(41);
    const auto state = random_state({2, 3}, 3, rng);
    DmaxOptions one;
    one.seed = 5;
    DmaxOptions four = one;
    four.workers = 4;
    const auto a = d_max(state, one);
    const auto b = d_max(state, one);
    const auto c = d_max(state, four);
    CHECK(a.d == b.d);
    CHECK(a.d == c.d);
    CHECK(max_abs_diff(a.unitary.matrix(), c.unitary.matrix()) == 0.0);
    CHECK(a.diagnostics.restarts >= 16);
}

}
