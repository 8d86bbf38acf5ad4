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

#include "qshift/operator_core.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <span>
#include <string>

#include "qshift/kernels.hpp"

namespace qshift {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid-dimension";
        case ErrorKind::InvalidOperator: return "invalid-operator";
        case ErrorKind::NotAState: return "not-a-state";
        case ErrorKind::NotCyclic: return "not-cyclic";
        case ErrorKind::Normalization: return "normalization";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::InternalConsistency: return "internal-consistency";
        case ErrorKind::AmbiguousRecovery: return "ambiguous-recovery";
        case ErrorKind::Input: return "input";
    }
    return "unknown";
}

void Tolerances::validate() const {
    for (double t : {herm, unitary, trace, psd, cyclic, eps_deg, bound, radicand}) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw Error(ErrorKind::Input, "tolerances must be positive and finite");
    }
}

GeneratorBasis::GeneratorBasis(int dimension) : dim_(dimension) {
    if (dimension < 2)
        throw Error(ErrorKind::InvalidDimension,
                    "generator basis needs N >= 2, got " + std::to_string(dimension));
    const int n = dimension;
    const cplx i_unit(0.0, 1.0);

    auto push = [&](std::vector<SparseEntry> entries) {
        CMatrix m = CMatrix::Zero(n, n);
        for (const auto& e : entries) m(e.row, e.col) = e.value;
        dense_.push_back(std::move(m));
        sparse_.push_back(std::move(entries));
    };

    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) push({{j, k, 1.0}, {k, j, 1.0}});
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) push({{j, k, -i_unit}, {k, j, i_unit}});
    for (int l = 1; l < n; ++l) {
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        std::vector<SparseEntry> entries;
        for (int m = 0; m < l; ++m) entries.push_back({m, m, scale});
        entries.push_back({l, l, -scale * l});
        push(std::move(entries));
    }
}

CVector GeneratorBasis::traces_with(const CMatrix& m) const {
    CVector out(size());
    for (int i = 0; i < size(); ++i) {
        cplx acc = 0.0;
        // Tr(l M) = sum_{r,c} l(r,c) M(c,r)
        for (const auto& e : sparse_[static_cast<std::size_t>(i)]) acc += e.value * m(e.col, e.row);
        out(i) = acc;
    }
    return out;
}

RVector GeneratorBasis::coefficients(const CMatrix& m) const {
    return 0.5 * traces_with(m).real();
}

GeneratorBasis gell_mann_basis(int n) { return GeneratorBasis(n); }

const GeneratorBasis& cached_basis(int n) {
    constexpr int kMax = 16;
    static std::array<std::unique_ptr<GeneratorBasis>, kMax + 1> cache;
    static std::mutex mu;
    if (n < 2 || n > kMax)
        throw Error(ErrorKind::InvalidDimension,
                    "cached basis supports 2 <= N <= 16, got " + std::to_string(n));
    std::lock_guard lock(mu);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) slot = std::make_unique<GeneratorBasis>(n);
    return *slot;
}

const CMatrix& pauli(int i) {
    return cached_basis(2)[i];
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

void require_bipartite_shape(const CMatrix& rho, Dims dims) {
    if (dims.a < 1 || dims.b < 1 || rho.rows() != dims.total() || rho.cols() != dims.total())
        throw Error(ErrorKind::InvalidDimension,
                    "operator is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                        ", expected " + std::to_string(dims.total()) + "x" +
                        std::to_string(dims.total()));
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, Dims dims, Subsystem keep) {
    require_bipartite_shape(rho, dims);
    const int na = dims.a;
    const int nb = dims.b;
    if (keep == Subsystem::A) {
        CMatrix out = CMatrix::Zero(na, na);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j)
                for (int k = 0; k < nb; ++k) out(i, j) += rho(i * nb + k, j * nb + k);
        return out;
    }
    CMatrix out = CMatrix::Zero(nb, nb);
    for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
            for (int i = 0; i < na; ++i) out(k, l) += rho(i * nb + k, i * nb + l);
    return out;
}

CMatrix partial_transpose_b(const CMatrix& rho, Dims dims) {
    require_bipartite_shape(rho, dims);
    const int na = dims.a;
    const int nb = dims.b;
    CMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = rho(i * nb + l, j * nb + k);
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::InvalidDimension, "max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& u, double tol) {
    return u.rows() == u.cols() &&
           max_abs_diff(u.adjoint() * u, CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::InvalidDimension, "hs_inner: shape mismatch");
    // Re sum conj(a_ij) b_ij = sum (re a re b + im a im b): a flat dot product
    // over the interleaved storage.
    const auto n = static_cast<std::size_t>(2 * a.size());
    return kernels::dot(std::span<const double>(reinterpret_cast<const double*>(a.data()), n),
                        std::span<const double>(reinterpret_cast<const double*>(b.data()), n));
}

double frobenius_inner(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::InvalidDimension, "frobenius_inner: shape mismatch");
    const auto n = static_cast<std::size_t>(a.size());
    return kernels::dot(std::span<const double>(a.data(), n), std::span<const double>(b.data(), n));
}

EigenDecomposition hermitian_eig(const CMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::InvalidOperator, "hermitian_eig: matrix is not square");
    if (!is_hermitian(m, tol))
        throw Error(ErrorKind::InvalidOperator, "hermitian_eig: matrix is not Hermitian");
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::InternalConsistency, "hermitian_eig: solver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix exp_i_hermitian(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
    const RVector& w = solver.eigenvalues();
    CVector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, w(i));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

CMatrix apply_local_b(const CMatrix& rho, Dims dims, const CMatrix& u) {
    require_bipartite_shape(rho, dims);
    if (u.rows() != dims.b || u.cols() != dims.b)
        throw Error(ErrorKind::InvalidDimension, "apply_local_b: unitary does not act on B");
    const int na = dims.a;
    const int nb = dims.b;
    // Block (i,j) of rho is an nb x nb matrix; it maps to U * block * U^dagger.
    CMatrix out(rho.rows(), rho.cols());
    const CMatrix ud = u.adjoint();
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            out.block(i * nb, j * nb, nb, nb).noalias() = u * rho.block(i * nb, j * nb, nb, nb) * ud;
    return out;
}

}  // namespace qshift
