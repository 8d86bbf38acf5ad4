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

#include "qshift/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "block_search.hpp"
#include "qshift/operator_core.hpp"

namespace qshift {

std::vector<int> CommutantStructure::block_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(blocks.size());
    for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.indices.size()));
    return sizes;
}

int CommutantStructure::parameter_count() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.indices.size() * b.indices.size());
    return n - 1;
}

CommutantStructure commutant_of(const CMatrix& rho_b, double eps_deg) {
    auto eig = hermitian_eig(rho_b, 1e-9);
    CommutantStructure out{std::move(eig.vectors), std::move(eig.values), {}, eps_deg};
    const int n = out.dimension();
    const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
    EigenBlock current{out.eigenvalues(0), {0}};
    for (int i = 1; i < n; ++i) {
        if (std::abs(out.eigenvalues(i) - out.eigenvalues(i - 1)) < eps_deg * scale) {
            current.indices.push_back(i);
        } else {
            out.blocks.push_back(std::move(current));
            current = EigenBlock{out.eigenvalues(i), {i}};
        }
    }
    out.blocks.push_back(std::move(current));
    for (auto& b : out.blocks) {
        double sum = 0.0;
        for (int i : b.indices) sum += out.eigenvalues(i);
        b.eigenvalue = sum / static_cast<double>(b.indices.size());
    }
    return out;
}

CommutantStructure commutant_basis(const BipartiteState& state, double eps_deg) {
    return commutant_of(state.reduced(Subsystem::B), eps_deg);
}

CyclicUnitary::CyclicUnitary(CMatrix u, std::vector<CyclicBlock> blocks, CMatrix basis,
                             std::uint64_t ref)
    : u_(std::move(u)), blocks_(std::move(blocks)), basis_(std::move(basis)), reference_id_(ref) {}

double CyclicUnitary::commutator_norm(const CMatrix& rho_b) const {
    if (rho_b.rows() != u_.rows() || rho_b.cols() != u_.cols())
        throw Error(ErrorKind::InvalidDimension, "commutator_norm: dimension mismatch");
    const CMatrix c = rho_b * u_ - u_ * rho_b;
    return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

CyclicUnitary make_cyclic(const CommutantStructure& structure,
                          std::span<const CMatrix> block_unitaries, std::uint64_t reference_state_id,
                          const Tolerances& tol) {
    if (block_unitaries.size() != structure.blocks.size())
        throw Error(ErrorKind::InvalidDimension,
                    "expected " + std::to_string(structure.blocks.size()) + " block unitaries, got " +
                        std::to_string(block_unitaries.size()));
    const int n = structure.dimension();
    CMatrix w = CMatrix::Zero(n, n);
    std::vector<CyclicBlock> blocks;
    blocks.reserve(block_unitaries.size());
    for (std::size_t k = 0; k < block_unitaries.size(); ++k) {
        const auto& eb = structure.blocks[k];
        const auto& bu = block_unitaries[k];
        const auto s = static_cast<Eigen::Index>(eb.indices.size());
        if (bu.rows() != s || bu.cols() != s)
            throw Error(ErrorKind::InvalidDimension,
                        "block " + std::to_string(k) + " must be " + std::to_string(s) + "x" +
                            std::to_string(s));
        if (!is_unitary(bu, tol.unitary))
            throw Error(ErrorKind::InvalidOperator, "block " + std::to_string(k) + " is not unitary");
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index c = 0; c < s; ++c)
                w(eb.indices[static_cast<std::size_t>(r)], eb.indices[static_cast<std::size_t>(c)]) = bu(r, c);
        blocks.push_back({eb.eigenvalue, eb.indices, bu});
    }
    CMatrix u = structure.eigenbasis * w * structure.eigenbasis.adjoint();
    return CyclicUnitary(std::move(u), std::move(blocks), structure.eigenbasis, reference_state_id);
}

CyclicUnitary make_cyclic(const BipartiteState& state, std::span<const CMatrix> block_unitaries,
                          const Tolerances& tol) {
    return make_cyclic(commutant_basis(state, tol.eps_deg), block_unitaries, state.id(), tol);
}

CyclicUnitary identity_cyclic(const BipartiteState& state, const Tolerances& tol) {
    const auto structure = commutant_basis(state, tol.eps_deg);
    std::vector<CMatrix> blocks;
    for (const auto& b : structure.blocks) {
        const auto s = static_cast<Eigen::Index>(b.indices.size());
        blocks.push_back(CMatrix::Identity(s, s));
    }
    return make_cyclic(structure, blocks, state.id(), tol);
}

CyclicUnitary cyclic_from_matrix(const BipartiteState& state, const CMatrix& u, const Tolerances& tol) {
    const Dims dims = state.dims();
    if (u.rows() != dims.b || u.cols() != dims.b)
        throw Error(ErrorKind::InvalidDimension, "unitary does not act on subsystem B");
    if (!is_unitary(u, tol.unitary)) throw Error(ErrorKind::InvalidOperator, "operator is not unitary");
    const CMatrix rho_b = state.reduced(Subsystem::B);
    const CMatrix comm = rho_b * u - u * rho_b;
    const double comm_norm = comm.cwiseAbs().maxCoeff();
    if (comm_norm > tol.cyclic)
        throw Error(ErrorKind::NotCyclic,
                    "unitary does not commute with rho_B (|[rho_B,U]| = " + std::to_string(comm_norm) + ")");

    const auto structure = commutant_of(rho_b, tol.eps_deg);
    const CMatrix w = structure.eigenbasis.adjoint() * u * structure.eigenbasis;
    std::vector<CMatrix> blocks;
    double leak = 0.0;
    for (std::size_t k = 0; k < structure.blocks.size(); ++k) {
        const auto& idx = structure.blocks[k].indices;
        const auto s = static_cast<Eigen::Index>(idx.size());
        CMatrix b(s, s);
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index c = 0; c < s; ++c)
                b(r, c) = w(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
        blocks.push_back(std::move(b));
        for (std::size_t m = 0; m < structure.blocks.size(); ++m) {
            if (m == k) continue;
            for (int r : idx)
                for (int c : structure.blocks[m].indices) leak = std::max(leak, std::abs(w(r, c)));
        }
    }
    // A tiny commutator with a large off-block part means two eigenvalues sit
    // just outside the merge threshold.
    if (leak > 1e-8)
        throw Error(ErrorKind::NotCyclic,
                    "unitary mixes eigenspaces of rho_B that are not merged at eps_deg (leak " +
                        std::to_string(leak) + ")");
    // Re-unitarize each block (polar factor) to absorb the rounding leak.
    for (auto& b : blocks) {
        Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        b = svd.matrixU() * svd.matrixV().adjoint();
    }
    return make_cyclic(structure, blocks, state.id(), tol);
}

double correlation_prefactor(Dims dims) {
    return (dims.a - 1.0) * (dims.b - 1.0) / (static_cast<double>(dims.a) * dims.b);
}

RMatrix conjugation_matrix(const CMatrix& u, const GeneratorBasis& basis) {
    const int n = basis.dimension();
    if (u.rows() != n || u.cols() != n)
        throw Error(ErrorKind::InvalidDimension, "conjugation_matrix: unitary/basis mismatch");
    RMatrix r(basis.size(), basis.size());
    const CMatrix ud = u.adjoint();
    for (int j = 0; j < basis.size(); ++j) r.col(j) = basis.coefficients(u * basis[j] * ud);
    return r;
}

namespace {

double checked_sqrt(double radicand, const Tolerances& tol, const char* where) {
    if (radicand < 0.0) {
        if (radicand > -tol.radicand) return 0.0;
        throw Error(ErrorKind::InternalConsistency,
                    std::string(where) + ": negative radicand " + std::to_string(radicand));
    }
    return std::sqrt(radicand);
}

void require_cyclic(const CMatrix& rho_b, const CyclicUnitary& u, const Tolerances& tol) {
    if (u.dimension() != rho_b.rows())
        throw Error(ErrorKind::InvalidDimension, "cyclic unitary does not act on subsystem B");
    const double c = u.commutator_norm(rho_b);
    if (c > tol.cyclic)
        throw Error(ErrorKind::NotCyclic,
                    "unitary does not commute with rho_B (|[rho_B,U]| = " + std::to_string(c) + ")");
}

}  // namespace

double shift_direct(const BipartiteState& state, const CyclicUnitary& u, const Tolerances& tol) {
    require_cyclic(state.reduced(Subsystem::B), u, tol);
    const CMatrix& rho = state.matrix();
    // Tr rho^2 - Tr rho rho_f = |rho - rho_f|^2 / 2 because Tr rho_f^2 = Tr rho^2;
    // the difference form keeps full precision as d -> 0.
    const CMatrix diff = rho - apply_local_b(rho, state.dims(), u.matrix());
    return checked_sqrt(0.5 * hs_inner(diff, diff), tol, "shift_direct");
}

RMatrix beta_final(const BlochForm& form, const CyclicUnitary& u) {
    if (u.dimension() != form.dims.b)
        throw Error(ErrorKind::InvalidDimension, "beta_final: unitary does not act on subsystem B");
    const RMatrix r = conjugation_matrix(u.matrix(), cached_basis(form.dims.b));
    if (form.beta.cols() != r.rows())
        throw Error(ErrorKind::InvalidDimension, "beta_final: correlation matrix shape mismatch");
    return form.beta * r.transpose();
}

double shift_correlation(const BlochForm& form, const CyclicUnitary& u, const Tolerances& tol) {
    const GeneratorBasis& basis_b = cached_basis(form.dims.b);
    require_cyclic(single_party_operator(form.rB, basis_b), u, tol);
    // |beta|^2 - sum beta beta^f, written as |beta - beta^f|^2 / 2 (norms agree).
    const RMatrix diff = form.beta - beta_final(form, u);
    return checked_sqrt(correlation_prefactor(form.dims) * 0.5 * frobenius_inner(diff, diff), tol,
                        "shift_correlation");
}

std::string_view to_string(ShiftFormula f) noexcept {
    return f == ShiftFormula::Direct ? "direct" : "correlation";
}

std::string_view to_string(DmaxMethod m) noexcept {
    switch (m) {
        case DmaxMethod::ClosedFormPhase: return "closed-form-phase";
        case DmaxMethod::ClosedFormRotation: return "closed-form-rotation";
        case DmaxMethod::MultiStart: return "multi-start";
    }
    return "unknown";
}

namespace {

constexpr double kCrossCheckLimit = 1e-9;

// exp(i phi/2 n.sigma)
CMatrix su2(const Vec3& n, double phi) {
    CMatrix h = CMatrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) h += (0.5 * phi * n(i)) * pauli(i);
    return exp_i_hermitian(h);
}

// Divides out the phase of the first eigenspace block when it is 1x1; d does
// not depend on the global phase of U.
CyclicUnitary pin_global_phase(const BipartiteState& state, const CyclicUnitary& u,
                               const Tolerances& tol) {
    const auto& blocks = u.blocks();
    if (blocks.empty() || blocks.front().unitary.rows() != 1) return u;
    const cplx phase = blocks.front().unitary(0, 0);
    const cplx inv = std::conj(phase) / std::abs(phase);
    std::vector<CMatrix> pinned;
    for (const auto& b : blocks) pinned.push_back(b.unitary * inv);
    pinned.front()(0, 0) = 1.0;
    return make_cyclic(commutant_basis(state, tol.eps_deg), pinned, state.id(), tol);
}

ShiftResult finish(const BipartiteState& state, const BlochForm& form, CyclicUnitary u,
                   ShiftFormula formula, DmaxMethod method, bool certified,
                   OptimizerDiagnostics diag, const Tolerances& tol) {
    u = pin_global_phase(state, u, tol);
    const double direct = shift_direct(state, u, tol);
    const double corr = shift_correlation(form, u, tol);
    const double residual = std::abs(direct - corr);
    if (residual > kCrossCheckLimit)
        throw Error(ErrorKind::InternalConsistency,
                    "shift formulas disagree by " + std::to_string(residual));
    const double d = formula == ShiftFormula::Direct ? direct : corr;
    return ShiftResult{std::clamp(d, 0.0, 1.0), formula, std::move(u), residual, method, certified,
                       diag};
}

}  // namespace

ShiftResult d_max_closed_form(const BipartiteState& state, const DmaxOptions& opts) {
    const Dims dims = state.dims();
    if (dims.b != 2)
        throw Error(ErrorKind::Domain, "closed-form d_max requires a qubit on subsystem B");
    const Tolerances& tol = opts.tol;
    const BlochForm form = decompose(state);
    const auto structure = commutant_basis(state, tol.eps_deg);
    const Mat3 s = form.beta.transpose() * form.beta;

    if (structure.blocks.size() == 1) {
        // rho_B = I/2: every U is cyclic and acts on beta as an arbitrary proper
        // rotation. min_R Tr(S R) = m3 - m2 - m1, attained by a half turn about
        // the eigenvector of the smallest eigenvalue.
        Eigen::SelfAdjointEigenSolver<Mat3> es(s);
        const Vec3 axis = es.eigenvectors().col(0);
        const CMatrix u = su2(axis, M_PI);
        return finish(state, form, cyclic_from_matrix(state, u, tol), ShiftFormula::Correlation,
                      DmaxMethod::ClosedFormRotation, true, {}, tol);
    }

    // Non-degenerate rho_B: U is a relative phase about the eigen-axis and
    // sum beta.beta^f = A + B cos(phi) + C sin(phi).
    const Vec3 axis = form.rB.normalized();
    auto overlap = [&](double phi) {
        const RMatrix r = conjugation_matrix(su2(axis, phi), cached_basis(2));
        return (s * r).trace();
    };
    const double f0 = overlap(0.0);
    const double fpi = overlap(M_PI);
    const double fhalf = overlap(M_PI / 2);
    const double a = 0.5 * (f0 + fpi);
    const double b = 0.5 * (f0 - fpi);
    const double c = fhalf - a;
    const double phi = (std::hypot(b, c) > 0.0) ? std::atan2(-c, -b) : 0.0;
    const CMatrix u = su2(axis, phi);
    return finish(state, form, cyclic_from_matrix(state, u, tol), ShiftFormula::Correlation,
                  DmaxMethod::ClosedFormPhase, true, {}, tol);
}

ShiftResult d_max_search(const BipartiteState& state, const DmaxOptions& opts) {
    if (opts.restarts < 1) throw Error(ErrorKind::Input, "d_max needs at least one restart");
    const Tolerances& tol = opts.tol;
    const auto structure = commutant_basis(state, tol.eps_deg);
    const BlochForm form = decompose(state);

    detail::SearchConfig cfg{opts.restarts, opts.max_iters, opts.tol_improve, opts.seed, opts.workers};
    detail::SearchOutcome out = detail::search_commutant(state.matrix(), state.dims(), structure, cfg);

    CyclicUnitary u = make_cyclic(structure, out.blocks, state.id(), tol);
    OptimizerDiagnostics diag{opts.restarts, out.converged_restarts, out.iterations, out.evaluations,
                              out.gradient_norm, out.best_restart};
    return finish(state, form, std::move(u), ShiftFormula::Direct, DmaxMethod::MultiStart,
                  out.converged_restarts > 0, diag, tol);
}

ShiftResult d_max(const BipartiteState& state, const DmaxOptions& opts) {
    opts.tol.validate();
    if (opts.closed_form && state.dims().b == 2) return d_max_closed_form(state, opts);
    return d_max_search(state, opts);
}

}  // namespace qshift
