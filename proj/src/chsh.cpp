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

#include "qshift/chsh.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "qshift/operator_core.hpp"
#include "qshift/random.hpp"

namespace qshift {

void MeasurementSettings::validate() const {
    for (const Vec3* v : {&n1, &n2, &m1, &m2})
        if (!v->allFinite() || std::abs(v->norm() - 1.0) > 1e-12)
            throw Error(ErrorKind::Input, "measurement axes must be unit vectors");
}

Mat3 measurement_matrix(const MeasurementSettings& s) {
    return (s.n1 + s.n2) * s.m1.transpose() + (s.n1 - s.n2) * s.m2.transpose();
}

namespace {

CMatrix axis_operator(const Vec3& v) {
    return v(0) * pauli(0) + v(1) * pauli(1) + v(2) * pauli(2);
}

void require_two_qubit(const BipartiteState& state) {
    if (state.dims() != Dims{2, 2})
        throw Error(ErrorKind::Domain, "CHSH quantities are defined for two qubits only");
}

}  // namespace

double correlator(const BipartiteState& state, const Vec3& n, const Vec3& m) {
    require_two_qubit(state);
    return hs_inner(state.matrix(), tensor(axis_operator(n), axis_operator(m)));
}

double expectation_F(const BipartiteState& state, const MeasurementSettings& s) {
    require_two_qubit(state);
    s.validate();
    return correlator(state, s.n1, s.m1) + correlator(state, s.n1, s.m2) +
           correlator(state, s.n2, s.m1) - correlator(state, s.n2, s.m2);
}

double correlation_F(const RMatrix& beta, const Mat3& t) {
    if (beta.rows() != 3 || beta.cols() != 3)
        throw Error(ErrorKind::InvalidDimension, "correlation_F needs a 3x3 correlation matrix");
    return frobenius_inner(beta, RMatrix(t));
}

Mat3 pauli_conjugate(const Vec3& u, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double h = std::sin(0.5 * phi);
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            double eps_term = 0.0;
            for (int j = 0; j < 3; ++j) {
                // Levi-Civita e_ijk
                const int e = (i == j || j == k || i == k) ? 0 : (((j - i + 3) % 3 == 1) ? 1 : -1);
                eps_term += e * u(j);
            }
            r(i, k) = (i == k ? c : 0.0) + s * eps_term + 2.0 * h * h * u(i) * u(k);
        }
    return r;
}

CMatrix su2_rotation(const Vec3& u, double phi) {
    return exp_i_hermitian((0.5 * phi) * axis_operator(u));
}

MeasurementSettings carried_settings(const MeasurementSettings& s, const Mat3& pauli_rotation) {
    MeasurementSettings out = s;
    out.m1 = pauli_rotation.transpose() * s.m1;
    out.m2 = pauli_rotation.transpose() * s.m2;
    return out;
}

namespace {

using Angles = std::array<double, 4>;

Vec3 axis_from(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Gradient ascent on spherical angles with central differences and
// backtracking; returns the local maximizer.
Angles ascend(const std::function<double(const Angles&)>& f, Angles x, int max_iters) {
    constexpr double h = 1e-6;
    double fx = f(x);
    double step = 0.5;
    for (int it = 0; it < max_iters; ++it) {
        Angles g{};
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            Angles xp = x;
            Angles xm = x;
            xp[i] += h;
            xm[i] -= h;
            g[i] = (f(xp) - f(xm)) / (2.0 * h);
            gnorm2 += g[i] * g[i];
        }
        if (gnorm2 < 1e-20) break;
        bool moved = false;
        for (int k = 0; k < 40; ++k) {
            Angles y = x;
            for (std::size_t i = 0; i < x.size(); ++i) y[i] += step * g[i];
            const double fy = f(y);
            if (fy > fx + 1e-4 * step * gnorm2) {
                x = y;
                fx = fy;
                moved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return x;
}

struct PairOptimum {
    Vec3 first;
    Vec3 second;
    double value;
};

// Maximizes f(a, b) over pairs of unit axes. f is linear in each axis, so
// after the multi-start search the optimum is polished exactly from the
// measured response vectors r_i = (f(e_i, .) - f(-e_i, .)) / 2.
PairOptimum maximize_axes(const std::function<double(const Vec3&, const Vec3&)>& f, Rng& rng,
                          const ChshOptions& opts, const char* stage) {
    auto fa = [&](const Angles& x) { return f(axis_from(x[0], x[1]), axis_from(x[2], x[3])); };
    std::uniform_real_distribution<double> theta(0.0, M_PI);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * M_PI);
    Angles best{};
    double best_val = -1e300;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        const double t1 = theta(rng);
        const double p1 = phi(rng);
        const double t2 = theta(rng);
        const double p2 = phi(rng);
        const Angles x = ascend(fa, Angles{t1, p1, t2, p2}, opts.max_iters);
        const double v = fa(x);
        if (v > best_val) {
            best_val = v;
            best = x;
        }
    }
    Vec3 a = axis_from(best[0], best[1]);
    Vec3 b = axis_from(best[2], best[3]);

    auto response_first = [&](const Vec3& other) {
        Vec3 r;
        for (int i = 0; i < 3; ++i) r(i) = 0.5 * (f(Vec3::Unit(i), other) - f(-Vec3::Unit(i), other));
        return r;
    };
    auto response_second = [&](const Vec3& other) {
        Vec3 r;
        for (int i = 0; i < 3; ++i) r(i) = 0.5 * (f(other, Vec3::Unit(i)) - f(other, -Vec3::Unit(i)));
        return r;
    };
    const Vec3 ra = response_first(b);
    const Vec3 rb = response_second(a);
    if (ra.norm() < opts.ambiguity_tol || rb.norm() < opts.ambiguity_tol)
        throw Error(ErrorKind::AmbiguousRecovery,
                    std::string(stage) + ": F is flat along one measurement axis (response norms " +
                        std::to_string(ra.norm()) + ", " + std::to_string(rb.norm()) +
                        "); the optimal settings are not unique");
    a = ra.normalized();
    b = rb.normalized();
    return {a, b, f(a, b)};
}

// Proper rotation R minimizing sum_k |R src_k - dst_k|^2 (SVD solution).
Mat3 fit_rotation(const std::array<Vec3, 3>& src, const std::array<Vec3, 3>& dst) {
    Mat3 h = Mat3::Zero();
    for (std::size_t k = 0; k < src.size(); ++k) h += dst[k] * src[k].transpose();
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 fix = Mat3::Identity();
    fix(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
    return svd.matrixU() * fix * svd.matrixV().transpose();
}

}  // namespace

ChshTranscript protocol_run(const BipartiteState& state, const CyclicUnitary& u, const ChshOptions& opts) {
    require_two_qubit(state);
    // Also validates that U is cyclic for this state.
    (void)shift_direct(state, u, opts.tol);
    const BipartiteState final_state =
        BipartiteState::from_matrix(apply_local_b(state.matrix(), state.dims(), u.matrix()), state.dims(),
                                    opts.tol);
    Rng rng = make_rng(opts.seed, 0);
    ChshTranscript tr;

    // Stage 1: Bob at (sigma_1, sigma_2), search Alice on rho_0.
    const Vec3 bx = Vec3::UnitX();
    const Vec3 by = Vec3::UnitY();
    auto f_initial_alice = [&](const Vec3& n1, const Vec3& n2) {
        return expectation_F(state, {n1, n2, bx, by});
    };
    const PairOptimum alice = maximize_axes(f_initial_alice, rng, opts, "stage 1");
    tr.stage1.settings = {alice.first, alice.second, bx, by};
    tr.stage1.f_max = alice.value;

    // Bob's optimum for the fixed Alice axes, on rho_0 and on rho_f.
    auto bob_on = [&](const BipartiteState& s) {
        return [&, ptr = &s](const Vec3& m1, const Vec3& m2) {
            return expectation_F(*ptr, {alice.first, alice.second, m1, m2});
        };
    };
    const PairOptimum bob_initial = maximize_axes(bob_on(state), rng, opts, "stage 2 (reference)");
    const PairOptimum bob_final = maximize_axes(bob_on(final_state), rng, opts, "stage 2");
    tr.stage2.search_settings = {alice.first, alice.second, bob_final.first, bob_final.second};
    tr.stage2.f_search = bob_final.value;
    tr.stage2.fixed_axes_optimal = std::abs(bob_final.value - tr.stage1.f_max) < 1e-6;

    const Vec3 cross_initial = bob_initial.first.cross(bob_initial.second);
    const Vec3 cross_final = bob_final.first.cross(bob_final.second);
    if (cross_initial.norm() < opts.ambiguity_tol || cross_final.norm() < opts.ambiguity_tol)
        throw Error(ErrorKind::AmbiguousRecovery,
                    "stage 2: Bob's optimal axes are parallel; the carried frame is not determined");

    // Third axis from the first two, as sigma_3 = -i sigma_1 sigma_2.
    tr.recovered_rotation =
        fit_rotation({bob_initial.first, bob_initial.second, cross_initial.normalized()},
                     {bob_final.first, bob_final.second, cross_final.normalized()});

    tr.stage2.settings = {alice.first, alice.second, tr.recovered_rotation * bx, tr.recovered_rotation * by};
    tr.stage2.f = expectation_F(final_state, tr.stage2.settings);

    const BlochForm form = decompose(state);
    const Mat3 beta = form.beta;
    tr.recovered_beta_f = beta * tr.recovered_rotation.transpose();
    // R is orthogonal, so |beta|^2 - sum beta beta^f = |beta - beta^f|^2 / 2.
    const RMatrix diff = form.beta - RMatrix(tr.recovered_beta_f);
    tr.estimated_d = std::sqrt(correlation_prefactor(state.dims()) * 0.5 * frobenius_inner(diff, diff));
    return tr;
}

}  // namespace qshift
