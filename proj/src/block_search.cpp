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

#include "block_search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "qshift/operator_core.hpp"
#include "qshift/random.hpp"

namespace qshift::detail {

namespace {

// Everything below works in the eigenbasis of rho_B, where cyclic unitaries
// are block diagonal.
class Objective {
public:
    Objective(const CMatrix& rho, Dims dims, const CommutantStructure& structure)
        : dims_(dims), block_of_(static_cast<std::size_t>(structure.dimension())) {
        const CMatrix v = tensor(CMatrix::Identity(dims.a, dims.a), structure.eigenbasis);
        rho_ = v.adjoint() * rho * v;
        purity_ = hs_inner(rho_, rho_);
        for (std::size_t k = 0; k < structure.blocks.size(); ++k)
            for (int i : structure.blocks[k].indices) block_of_[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }

    // Tr(rho_0 rho_f)
    double overlap(const CMatrix& w) {
        ++evaluations;
        return hs_inner(rho_, apply_local_b(rho_, dims_, w));
    }

    double shift(double overlap) const { return std::sqrt(std::max(0.0, purity_ - overlap)); }

    // G with d/de overlap(W e^{ieK}) = Tr(K G), projected onto the block algebra.
    CMatrix gradient(const CMatrix& w) const {
        const CMatrix x = apply_local_b(rho_, dims_, w.adjoint());
        const CMatrix comm = cplx(0.0, 1.0) * (rho_ * x - x * rho_);
        CMatrix g = partial_trace(comm, dims_, Subsystem::B);
        g = 0.5 * (g + g.adjoint());
        for (Eigen::Index r = 0; r < g.rows(); ++r)
            for (Eigen::Index c = 0; c < g.cols(); ++c)
                if (block_of_[static_cast<std::size_t>(r)] != block_of_[static_cast<std::size_t>(c)]) g(r, c) = 0.0;
        return g;
    }

    int evaluations = 0;

private:
    Dims dims_;
    CMatrix rho_;
    double purity_ = 0.0;
    std::vector<int> block_of_;
};

struct RestartResult {
    CMatrix w;
    double d = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
    double gradient_norm = 0.0;
};

CMatrix random_block_unitary(const CommutantStructure& structure, Rng& rng) {
    const int n = structure.dimension();
    CMatrix w = CMatrix::Zero(n, n);
    for (const auto& b : structure.blocks) {
        const int s = static_cast<int>(b.indices.size());
        const CMatrix u = haar_unitary(s, rng);
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c)
                w(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(c)]) = u(r, c);
    }
    return w;
}

CMatrix polar_unitary(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double inner(const CMatrix& a, const CMatrix& b) { return hs_inner(a, b); }

RestartResult run_restart(const CMatrix& rho, Dims dims, const CommutantStructure& structure,
                          const SearchConfig& cfg, int index) {
    Objective obj(rho, dims, structure);
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(index));

    RestartResult res;
    CMatrix w = random_block_unitary(structure, rng);
    double f = obj.overlap(w);
    CMatrix g = obj.gradient(w);
    CMatrix dir = -g;
    double step_guess = 0.0;

    for (int it = 0; it < cfg.max_iters; ++it) {
        res.iterations = it + 1;
        const double gnorm = std::sqrt(std::max(0.0, inner(g, g)));
        if (gnorm < 1e-14) {
            res.converged = true;
            break;
        }
        if (inner(dir, g) >= 0.0) dir = -g;

        // Geodesic W exp(i t D); D = P diag(mu) P^dagger.
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (dir + dir.adjoint()));
        const RVector& mu = es.eigenvalues();
        const CMatrix& p = es.eigenvectors();
        const double mu_max = std::max(mu.cwiseAbs().maxCoeff(), 1e-300);
        auto along = [&](double t) {
            CVector ph(mu.size());
            for (Eigen::Index i = 0; i < mu.size(); ++i) ph(i) = std::polar(1.0, t * mu(i));
            return CMatrix(w * p * ph.asDiagonal() * p.adjoint());
        };
        auto h = [&](double t) { return obj.overlap(along(t)); };

        // Bracket a decrease, then refine with Brent.
        const double cap = 2.0 * M_PI / mu_max;
        double b = step_guess > 0.0 ? std::min(step_guess, cap) : 0.25 * M_PI / mu_max;
        double fb = h(b);
        double lo = 0.0;
        double hi = b;
        if (fb < f) {
            double c = std::min(2.0 * b, cap);
            double fc = h(c);
            while (fc < fb && c < cap) {
                lo = b;
                b = c;
                fb = fc;
                c = std::min(2.0 * c, cap);
                fc = h(c);
            }
            hi = c;
        } else {
            bool found = false;
            for (int k = 0; k < 40; ++k) {
                hi = b;
                b *= 0.25;
                fb = h(b);
                if (fb < f) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                res.converged = true;
                break;
            }
        }
        std::uintmax_t max_brent = 60;
        const auto [t_best, f_best] =
            boost::math::tools::brent_find_minima(h, lo, hi, 45, max_brent);
        double t = t_best;
        double f_new = f_best;
        if (fb < f_new) {
            t = b;
            f_new = fb;
        }
        step_guess = t;

        const CMatrix w_new = polar_unitary(along(t));
        f_new = obj.overlap(w_new);
        const double gain = obj.shift(f_new) - obj.shift(f);
        const CMatrix g_new = obj.gradient(w_new);

        // Polak-Ribiere+, with the Lie-algebra frame as transport.
        const double denom = inner(g, g);
        const double beta_pr = denom > 0.0 ? std::max(0.0, inner(g_new, g_new - g) / denom) : 0.0;
        const bool reset = (it + 1) % std::max(1, structure.parameter_count() + 1) == 0;
        dir = reset ? CMatrix(-g_new) : CMatrix(-g_new + beta_pr * dir);

        if (f_new <= f) {
            w = w_new;
            f = f_new;
        }
        g = g_new;
        if (gain < cfg.tol_improve) {
            res.converged = true;
            break;
        }
    }
    res.w = w;
    res.d = obj.shift(f);
    res.gradient_norm = std::sqrt(std::max(0.0, inner(g, g)));
    res.evaluations = obj.evaluations;
    return res;
}

std::vector<CMatrix> split_blocks(const CMatrix& w, const CommutantStructure& structure) {
    std::vector<CMatrix> blocks;
    for (const auto& b : structure.blocks) {
        const auto s = static_cast<Eigen::Index>(b.indices.size());
        CMatrix m(s, s);
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index c = 0; c < s; ++c)
                m(r, c) = w(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(c)]);
        blocks.push_back(polar_unitary(m));
    }
    return blocks;
}

}  // namespace

SearchOutcome search_commutant(const CMatrix& rho, Dims dims, const CommutantStructure& structure,
                               const SearchConfig& cfg) {
    const int n = std::max(1, cfg.restarts);
    std::vector<RestartResult> results(static_cast<std::size_t>(n));
    const int workers = std::clamp(cfg.workers, 1, n);
    if (workers == 1) {
        for (int r = 0; r < n; ++r) results[static_cast<std::size_t>(r)] = run_restart(rho, dims, structure, cfg, r);
    } else {
        std::vector<std::jthread> pool;
        for (int k = 0; k < workers; ++k)
            pool.emplace_back([&, k] {
                for (int r = k; r < n; r += workers)
                    results[static_cast<std::size_t>(r)] = run_restart(rho, dims, structure, cfg, r);
            });
    }

    SearchOutcome out;
    int best = 0;
    for (int r = 0; r < n; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        out.iterations += res.iterations;
        out.evaluations += res.evaluations;
        if (res.converged) ++out.converged_restarts;
        if (res.d > results[static_cast<std::size_t>(best)].d) best = r;
    }
    const auto& winner = results[static_cast<std::size_t>(best)];
    out.blocks = split_blocks(winner.w, structure);
    out.d = winner.d;
    out.gradient_norm = winner.gradient_norm;
    out.best_restart = best;
    return out;
}

}  // namespace qshift::detail
