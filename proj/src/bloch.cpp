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

#include "qshift/bloch.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace qshift {

namespace {

std::uint64_t fnv1a(const CMatrix& m) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    const std::size_t n = static_cast<std::size_t>(m.size()) * sizeof(cplx);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h ^ (static_cast<std::uint64_t>(m.rows()) << 32);
}

void require_bases(Dims dims, const GeneratorBasis& a, const GeneratorBasis& b) {
    if (a.dimension() != dims.a || b.dimension() != dims.b)
        throw Error(ErrorKind::InvalidDimension,
                    "generator bases (" + std::to_string(a.dimension()) + "," +
                        std::to_string(b.dimension()) + ") do not match state dims (" +
                        std::to_string(dims.a) + "," + std::to_string(dims.b) + ")");
}

}  // namespace

BipartiteState::BipartiteState(CMatrix rho, Dims dims, double min_eig)
    : rho_(std::move(rho)), dims_(dims), id_(fnv1a(rho_)), min_eig_(min_eig) {}

BipartiteState BipartiteState::from_matrix(const CMatrix& rho, Dims dims, const Tolerances& tol) {
    if (dims.a < 2 || dims.b < 2)
        throw Error(ErrorKind::InvalidDimension, "subsystem dimensions must be >= 2");
    if (rho.rows() != dims.total() || rho.cols() != dims.total())
        throw Error(ErrorKind::InvalidDimension,
                    "density matrix is " + std::to_string(rho.rows()) + "x" +
                        std::to_string(rho.cols()) + ", dims require " +
                        std::to_string(dims.total()));
    if (!rho.allFinite()) throw Error(ErrorKind::NotAState, "density matrix has non-finite entries");
    if (!is_hermitian(rho, tol.herm)) throw Error(ErrorKind::NotAState, "density matrix is not Hermitian");
    CMatrix herm = 0.5 * (rho + rho.adjoint());
    const double tr = herm.trace().real();
    if (std::abs(tr - 1.0) > tol.trace)
        throw Error(ErrorKind::NotAState, "density matrix trace is " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues()(0);
    if (min_eig < -tol.psd)
        throw Error(ErrorKind::NotAState,
                    "density matrix has negative eigenvalue " + std::to_string(min_eig));
    return BipartiteState(std::move(herm), dims, min_eig);
}

double BipartiteState::purity() const { return hs_inner(rho_, rho_); }

double bloch_scale(int n) { return std::sqrt(n * (n - 1.0) / 2.0); }

RVector bloch_vector(const CMatrix& rho, const GeneratorBasis& basis) {
    const int n = basis.dimension();
    if (rho.rows() != n || rho.cols() != n)
        throw Error(ErrorKind::InvalidDimension, "bloch_vector: operator/basis dimension mismatch");
    return std::sqrt(n / (2.0 * (n - 1.0))) * basis.traces_with(rho).real();
}

CMatrix single_party_operator(const RVector& r, const GeneratorBasis& basis) {
    const int n = basis.dimension();
    if (r.size() != basis.size())
        throw Error(ErrorKind::InvalidDimension, "single_party_operator: vector length mismatch");
    CMatrix out = CMatrix::Identity(n, n);
    const double c = bloch_scale(n);
    for (int i = 0; i < basis.size(); ++i) out += (c * r(i)) * basis[i];
    return out / static_cast<double>(n);
}

BlochForm decompose(const BipartiteState& state, const GeneratorBasis& basis_a,
                    const GeneratorBasis& basis_b) {
    const Dims dims = state.dims();
    require_bases(dims, basis_a, basis_b);
    const CMatrix& rho = state.matrix();
    const int na = dims.a;
    const int nb = dims.b;

    BlochForm form{dims, bloch_vector(state.reduced(Subsystem::A), basis_a),
                   bloch_vector(state.reduced(Subsystem::B), basis_b),
                   RMatrix(basis_a.size(), basis_b.size())};

    // Tr(rho (l_i (x) l_j)) = sum over nonzeros (r,c) of l_i and (p,q) of l_j
    // of l_i(r,c) l_j(p,q) rho((c,q),(r,p)).
    const double scale = std::sqrt(na * nb / (4.0 * (na - 1.0) * (nb - 1.0)));
    for (int i = 0; i < basis_a.size(); ++i) {
        for (int j = 0; j < basis_b.size(); ++j) {
            cplx acc = 0.0;
            for (const auto& ea : basis_a.sparse(i))
                for (const auto& eb : basis_b.sparse(j))
                    acc += ea.value * eb.value * rho(ea.col * nb + eb.col, ea.row * nb + eb.row);
            form.beta(i, j) = scale * acc.real();
        }
    }
    return form;
}

BlochForm decompose(const BipartiteState& state) {
    return decompose(state, cached_basis(state.dims().a), cached_basis(state.dims().b));
}

CMatrix bloch_operator(const BlochForm& form, const GeneratorBasis& basis_a,
                       const GeneratorBasis& basis_b) {
    const Dims dims = form.dims;
    require_bases(dims, basis_a, basis_b);
    if (form.rA.size() != basis_a.size() || form.rB.size() != basis_b.size() ||
        form.beta.rows() != basis_a.size() || form.beta.cols() != basis_b.size())
        throw Error(ErrorKind::InvalidDimension, "Bloch form component sizes do not match dims");

    const int na = dims.a;
    const int nb = dims.b;
    const double ca = bloch_scale(na);
    const double cb = bloch_scale(nb);

    CMatrix local_a = CMatrix::Zero(na, na);
    for (int i = 0; i < basis_a.size(); ++i) local_a += (ca * form.rA(i)) * basis_a[i];
    CMatrix local_b = CMatrix::Zero(nb, nb);
    for (int j = 0; j < basis_b.size(); ++j) local_b += (cb * form.rB(j)) * basis_b[j];

    CMatrix out = CMatrix::Identity(na * nb, na * nb);
    out += tensor(local_a, CMatrix::Identity(nb, nb));
    out += tensor(CMatrix::Identity(na, na), local_b);
    for (int i = 0; i < basis_a.size(); ++i) {
        CMatrix row = CMatrix::Zero(nb, nb);
        for (int j = 0; j < basis_b.size(); ++j) row += form.beta(i, j) * basis_b[j];
        out += (ca * cb) * tensor(basis_a[i], row);
    }
    return out / static_cast<double>(na * nb);
}

BipartiteState reconstruct(const BlochForm& form, const GeneratorBasis& basis_a,
                           const GeneratorBasis& basis_b, const Tolerances& tol) {
    return BipartiteState::from_matrix(bloch_operator(form, basis_a, basis_b), form.dims, tol);
}

BipartiteState reconstruct(const BlochForm& form, const Tolerances& tol) {
    if (form.dims.a < 2 || form.dims.b < 2)
        throw Error(ErrorKind::InvalidDimension, "subsystem dimensions must be >= 2");
    return reconstruct(form, cached_basis(form.dims.a), cached_basis(form.dims.b), tol);
}

std::pair<RVector, RVector> reduced_bloch(const BipartiteState& state) {
    return {bloch_vector(state.reduced(Subsystem::A), cached_basis(state.dims().a)),
            bloch_vector(state.reduced(Subsystem::B), cached_basis(state.dims().b))};
}

}  // namespace qshift
