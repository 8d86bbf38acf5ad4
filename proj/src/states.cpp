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

#include "qshift/states.hpp"

#include <cmath>
#include <string>

#include "qshift/operator_core.hpp"

namespace qshift {

namespace {

constexpr double kNormTol = 1e-12;

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

}  // namespace

RMatrix Ensemble::beta_from_terms() const {
    if (terms.empty()) return RMatrix();
    const auto na = static_cast<int>(terms.front().a.size());
    const auto nb = static_cast<int>(terms.front().b.size());
    const GeneratorBasis& ba = cached_basis(na);
    const GeneratorBasis& bb = cached_basis(nb);
    RMatrix beta = RMatrix::Zero(ba.size(), bb.size());
    for (const auto& t : terms)
        beta += t.weight * bloch_vector(projector(t.a), ba) * bloch_vector(projector(t.b), bb).transpose();
    return beta;
}

BipartiteState pure_state(const CVector& psi, Dims dims) {
    if (psi.size() != dims.total())
        throw Error(ErrorKind::InvalidDimension, "pure_state: vector length does not match dims");
    if (std::abs(psi.squaredNorm() - 1.0) > kNormTol)
        throw Error(ErrorKind::Normalization, "pure_state: vector is not normalized");
    return BipartiteState::from_matrix(projector(psi), dims);
}

BipartiteState schmidt_state(cplx k1, cplx k2) {
    const double norm = std::norm(k1) + std::norm(k2);
    if (std::abs(norm - 1.0) > kNormTol)
        throw Error(ErrorKind::Normalization,
                    "Schmidt coefficients must satisfy |k1|^2 + |k2|^2 = 1, got " + std::to_string(norm));
    CVector psi = CVector::Zero(4);
    psi(0) = k1;
    psi(3) = k2;
    return BipartiteState::from_matrix(projector(psi), {2, 2});
}

BipartiteState bell_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return schmidt_state(h, h);
}

BipartiteState werner_state(double p) {
    if (!(p >= -1.0 / 3.0 - 1e-15 && p <= 1.0 + 1e-15))
        throw Error(ErrorKind::NotAState,
                    "Werner parameter must lie in [-1/3, 1], got " + std::to_string(p));
    const double h = 1.0 / std::sqrt(2.0);
    CVector singlet = CVector::Zero(4);
    singlet(1) = h;
    singlet(2) = -h;
    const CMatrix rho = p * projector(singlet) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    return BipartiteState::from_matrix(rho, {2, 2});
}

BipartiteState classically_correlated_5050() {
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    return BipartiteState::from_matrix(rho, {2, 2});
}

BipartiteState maximally_mixed(Dims dims) {
    if (dims.a < 2 || dims.b < 2) throw Error(ErrorKind::InvalidDimension, "dims must be >= 2");
    const int n = dims.total();
    return BipartiteState::from_matrix(CMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

BipartiteState product_state(const CMatrix& rho_a, const CMatrix& rho_b) {
    return BipartiteState::from_matrix(tensor(rho_a, rho_b),
                                       {static_cast<int>(rho_a.rows()), static_cast<int>(rho_b.rows())});
}

std::pair<BipartiteState, Ensemble> ensemble_state(std::vector<EnsembleTerm> terms) {
    if (terms.empty()) throw Error(ErrorKind::Input, "ensemble needs at least one term");
    const auto na = terms.front().a.size();
    const auto nb = terms.front().b.size();
    double total = 0.0;
    for (const auto& t : terms) {
        if (!(t.weight > 0.0)) throw Error(ErrorKind::Input, "ensemble weights must be positive");
        if (t.a.size() != na || t.b.size() != nb)
            throw Error(ErrorKind::Input, "ensemble terms have mismatched local dimensions");
        if (std::abs(t.a.squaredNorm() - 1.0) > kNormTol || std::abs(t.b.squaredNorm() - 1.0) > kNormTol)
            throw Error(ErrorKind::Normalization, "ensemble local states must be normalized");
        total += t.weight;
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw Error(ErrorKind::Normalization, "ensemble weights sum to " + std::to_string(total));

    const Dims dims{static_cast<int>(na), static_cast<int>(nb)};
    CMatrix rho = CMatrix::Zero(dims.total(), dims.total());
    for (const auto& t : terms) rho += t.weight * tensor(projector(t.a), projector(t.b));
    Ensemble ens{std::move(terms)};
    return {BipartiteState::from_matrix(rho, dims), std::move(ens)};
}

BipartiteState swap_subsystems(const BipartiteState& state) {
    const Dims d = state.dims();
    const CMatrix& rho = state.matrix();
    CMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < d.a; ++i)
        for (int k = 0; k < d.b; ++k)
            for (int j = 0; j < d.a; ++j)
                for (int l = 0; l < d.b; ++l) out(k * d.a + i, l * d.a + j) = rho(i * d.b + k, j * d.b + l);
    return BipartiteState::from_matrix(out, {d.b, d.a});
}

SeparableSampler::SeparableSampler(std::uint64_t seed, SeparableSamplerConfig cfg)
    : seed_(seed), cfg_(cfg) {
    if (cfg_.min_terms < 1 || cfg_.max_terms < cfg_.min_terms)
        throw Error(ErrorKind::Input, "separable sampler needs 1 <= min_terms <= max_terms");
    if (cfg_.dims.a < 2 || cfg_.dims.b < 2)
        throw Error(ErrorKind::InvalidDimension, "separable sampler dims must be >= 2");
}

SeparableSample SeparableSampler::at(std::uint64_t index) const {
    Rng rng = make_rng(seed_, index);
    std::uniform_int_distribution<int> count_dist(cfg_.min_terms, cfg_.max_terms);
    const int m = count_dist(rng);

    // Flat Dirichlet weights: normalized exponentials.
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (auto& x : w) {
        x = expo(rng);
        sum += x;
    }
    std::vector<EnsembleTerm> terms;
    terms.reserve(w.size());
    double acc = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        double p = w[l] / sum;
        if (l + 1 == w.size()) p = 1.0 - acc;  // exact unit sum
        acc += p;
        CVector a = haar_pure_state(cfg_.dims.a, rng);
        CVector b = haar_pure_state(cfg_.dims.b, rng);
        terms.push_back({p, std::move(a), std::move(b)});
    }
    auto [state, ens] = ensemble_state(std::move(terms));
    return {std::move(state), std::move(ens)};
}

std::vector<SeparableSample> sample_separable(std::uint64_t seed, int min_terms, int max_terms,
                                              int count) {
    if (count < 1) throw Error(ErrorKind::Input, "sample count must be >= 1");
    SeparableSampler sampler(seed, {{2, 2}, min_terms, max_terms});
    std::vector<SeparableSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sampler.next());
    return out;
}

BipartiteState random_density_matrix(Dims dims, int rank, Rng& rng) {
    if (dims.a < 2 || dims.b < 2) throw Error(ErrorKind::InvalidDimension, "dims must be >= 2");
    if (rank < 1 || rank > dims.total())
        throw Error(ErrorKind::Input, "rank must lie in [1, N_A N_B]");
    const CMatrix g = complex_gaussian(dims.total(), rank, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return BipartiteState::from_matrix(rho, dims);
}

RandomStateSampler::RandomStateSampler(std::uint64_t seed, Dims dims, int rank)
    : seed_(seed), dims_(dims), rank_(rank) {
    if (rank < 1 || rank > dims.total()) throw Error(ErrorKind::Input, "rank must lie in [1, N_A N_B]");
}

BipartiteState RandomStateSampler::at(std::uint64_t index) const {
    Rng rng = make_rng(seed_, index);
    return random_density_matrix(dims_, rank_, rng);
}

std::vector<BipartiteState> sample_random_state(std::uint64_t seed, Dims dims, int rank, int count) {
    if (count < 1) throw Error(ErrorKind::Input, "sample count must be >= 1");
    RandomStateSampler sampler(seed, dims, rank);
    std::vector<BipartiteState> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sampler.next());
    return out;
}

}  // namespace qshift
