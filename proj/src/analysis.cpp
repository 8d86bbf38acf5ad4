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

#include "qshift/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qshift/operator_core.hpp"

namespace qshift {

PptResult ppt_test(const BipartiteState& state, double tol) {
    const Dims d = state.dims();
    const CMatrix pt = partial_transpose_b(state.matrix(), d);
    const auto eig = hermitian_eig(pt, 1e-9);
    PptResult out;
    out.min_eigenvalue = eig.values(0);
    out.entangled = out.min_eigenvalue < -tol;
    out.exact = d.total() <= 6;
    return out;
}

TheoremFit theorem_class_fit(const BlochForm& form, double tol) {
    TheoremFit fit;
    const RMatrix outer = form.rA * form.rB.transpose();
    const double denom = frobenius_inner(outer, outer);
    const double beta_max = form.beta.size() ? form.beta.cwiseAbs().maxCoeff() : 0.0;
    if (denom <= 0.0) {
        // Outer product vanishes: only beta = 0 (alpha arbitrary, take 0) fits.
        fit.alpha = 0.0;
        fit.residual = beta_max;
        fit.theorem_class = beta_max <= tol;
        return fit;
    }
    fit.alpha = std::clamp(frobenius_inner(form.beta, outer) / denom, 0.0, 1.0);
    fit.residual = (form.beta - fit.alpha * outer).cwiseAbs().maxCoeff();
    fit.theorem_class = fit.residual <= tol;
    return fit;
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::ProductLike: return "product-like";
        case Classification::ClassicallyCorrelatedCompatible: return "classically-correlated-compatible";
        case Classification::EntangledCertified: return "entangled-certified";
    }
    return "unknown";
}

namespace {

bool is_pure_two_qubit(const BipartiteState& state) {
    return state.dims() == Dims{2, 2} && std::abs(state.purity() - 1.0) <= 1e-9;
}

}  // namespace

DetectionReport detect(const BipartiteState& state, const DmaxOptions& opts) {
    DetectionReport rep;
    const ShiftResult shift = d_max(state, opts);
    rep.d_max = shift.d;
    rep.method = shift.method;
    rep.certified = shift.certified;

    const bool two_qubit = state.dims() == Dims{2, 2};
    rep.bound_violated = two_qubit && shift.d > kSeparableShiftBound + opts.tol.bound;

    const PptResult ppt = ppt_test(state, opts.tol.psd);
    rep.ppt_negative = ppt.entangled;
    rep.min_pt_eigenvalue = ppt.min_eigenvalue;
    rep.ppt_exact = ppt.exact;

    const TheoremFit fit = theorem_class_fit(decompose(state));
    rep.theorem_class = fit.theorem_class;
    rep.theorem_alpha = fit.alpha;

    if (is_pure_two_qubit(state)) rep.gisin_Bmax = 2.0 * std::sqrt(1.0 + shift.d * shift.d);

    if (rep.bound_violated || rep.ppt_negative)
        rep.classification = Classification::EntangledCertified;
    else if (rep.theorem_class)
        rep.classification = Classification::ProductLike;
    else
        rep.classification = Classification::ClassicallyCorrelatedCompatible;
    return rep;
}

double gisin_bmax(const BipartiteState& state, const DmaxOptions& opts) {
    if (state.dims() != Dims{2, 2})
        throw Error(ErrorKind::Domain, "the CHSH relation applies to two qubits only");
    if (!is_pure_two_qubit(state))
        throw Error(ErrorKind::Domain, "the CHSH relation applies to pure states only");
    const double d = d_max(state, opts).d;
    return 2.0 * std::sqrt(1.0 + d * d);
}

double gisin_bmax_schmidt(cplx k1, cplx k2) {
    const double k = std::abs(k1 * k2);
    return 2.0 * std::sqrt(1.0 + 4.0 * k * k);
}

}  // namespace qshift
