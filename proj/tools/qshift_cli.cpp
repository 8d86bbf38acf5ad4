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

// qshift: command-line front end.
//
//   qshift decompose --state bell
//   qshift dmax      --state schmidt:0.6
//   qshift detect    --state werner:0.8
//   qshift scan      --family separable --count 10000 --seed 42
//   qshift chsh      --state bell --phi 3.14159 --axis z
//
// Every flag can also be set through QSHIFT_<FLAG>, upper-cased with dashes
// turned into underscores (QSHIFT_SEED, QSHIFT_TOL_HERM, ...). Exit codes:
// 0 success, 2 input error, 3 internal-consistency failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qshift/analysis.hpp"
#include "qshift/bloch.hpp"
#include "qshift/chsh.hpp"
#include "qshift/cyclic.hpp"
#include "qshift/io.hpp"
#include "qshift/states.hpp"

namespace {

using qshift::io::json;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr const char* kScanSchema = "# qshift-scan schema=1";

struct RunConfig {
    std::uint64_t seed = 42;
    qshift::Tolerances tol{};
    int restarts = 16;
    int max_iters = 500;
    std::string format = "json";
    std::string out;
    int workers = 1;

    [[nodiscard]] qshift::DmaxOptions dmax_options() const {
        qshift::DmaxOptions o;
        o.restarts = restarts;
        o.max_iters = max_iters;
        o.seed = seed;
        o.tol = tol;
        return o;
    }

    void validate() const {
        tol.validate();
        if (restarts < 1) throw qshift::Error(qshift::ErrorKind::Input, "--restarts must be >= 1");
        if (max_iters < 1) throw qshift::Error(qshift::ErrorKind::Input, "--max-iters must be >= 1");
        if (workers < 1) throw qshift::Error(qshift::ErrorKind::Input, "--workers must be >= 1");
    }
};

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw qshift::Error(qshift::ErrorKind::Input, "cannot write '" + cfg.out + "'");
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void cmd_decompose(const RunConfig& cfg, const std::string& source) {
    const auto state = qshift::io::load_state(source, cfg.tol);
    const auto form = qshift::decompose(state);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "component,i,j,value\n";
        for (Eigen::Index i = 0; i < form.rA.size(); ++i) os << "rA," << i + 1 << ",," << fmt_num(form.rA(i)) << "\n";
        for (Eigen::Index i = 0; i < form.rB.size(); ++i) os << "rB," << i + 1 << ",," << fmt_num(form.rB(i)) << "\n";
        for (Eigen::Index i = 0; i < form.beta.rows(); ++i)
            for (Eigen::Index j = 0; j < form.beta.cols(); ++j)
                os << "beta," << i + 1 << "," << j + 1 << "," << fmt_num(form.beta(i, j)) << "\n";
        emit(cfg, os.str());
        return;
    }
    emit(cfg, dump(qshift::io::to_json(form)));
}

void cmd_dmax(const RunConfig& cfg, const std::string& source) {
    const auto state = qshift::io::load_state(source, cfg.tol);
    auto opts = cfg.dmax_options();
    opts.workers = cfg.workers;
    const auto result = qshift::d_max(state, opts);
    if (cfg.format == "csv") {
        emit(cfg, "d_max,formula,method,certified,cross_check_residual\n" + fmt_num(result.d) + "," +
                      std::string(qshift::to_string(result.formula)) + "," +
                      std::string(qshift::to_string(result.method)) + "," +
                      (result.certified ? "true" : "false") + "," + fmt_num(result.cross_check_residual) + "\n");
        return;
    }
    emit(cfg, dump(qshift::io::to_json(result)));
}

void cmd_detect(const RunConfig& cfg, const std::string& source) {
    const auto state = qshift::io::load_state(source, cfg.tol);
    const auto rep = qshift::detect(state, cfg.dmax_options());
    if (cfg.format == "csv") {
        emit(cfg, "d_max,bound_violated,ppt_negative,min_pt_eigenvalue,theorem_class,classification\n" +
                      fmt_num(rep.d_max) + "," + (rep.bound_violated ? "true" : "false") + "," +
                      (rep.ppt_negative ? "true" : "false") + "," + fmt_num(rep.min_pt_eigenvalue) + "," +
                      (rep.theorem_class ? "true" : "false") + "," +
                      std::string(qshift::to_string(rep.classification)) + "\n");
        return;
    }
    emit(cfg, dump(qshift::io::to_json(rep)));
}

qshift::Vec3 parse_axis(const std::string& axis) {
    if (axis == "x") return qshift::Vec3::UnitX();
    if (axis == "y") return qshift::Vec3::UnitY();
    if (axis == "z") return qshift::Vec3::UnitZ();
    std::stringstream ss(axis);
    qshift::Vec3 v;
    char c1 = 0;
    char c2 = 0;
    if (!(ss >> v(0) >> c1 >> v(1) >> c2 >> v(2)) || c1 != ',' || c2 != ',' || !(ss >> std::ws).eof() ||
        v.norm() == 0.0)
        throw qshift::Error(qshift::ErrorKind::Input, "--axis must be x, y, z or 'ux,uy,uz'");
    return v.normalized();
}

void cmd_chsh(const RunConfig& cfg, const std::string& source, double phi, const std::string& axis) {
    const auto state = qshift::io::load_state(source, cfg.tol);
    if (state.dims() != qshift::Dims{2, 2})
        throw qshift::Error(qshift::ErrorKind::Domain, "chsh needs a two-qubit state");
    const qshift::Vec3 u = parse_axis(axis);
    const auto cyclic = qshift::cyclic_from_matrix(state, qshift::su2_rotation(u, phi), cfg.tol);
    qshift::ChshOptions opts;
    opts.seed = cfg.seed;
    opts.tol = cfg.tol;
    const auto transcript = qshift::protocol_run(state, cyclic, opts);
    const double direct = qshift::shift_direct(state, cyclic, cfg.tol);
    if (cfg.format == "csv") {
        emit(cfg, "F_max,F_final,F_search,estimated_d,shift_direct\n" + fmt_num(transcript.stage1.f_max) + "," +
                      fmt_num(transcript.stage2.f) + "," + fmt_num(transcript.stage2.f_search) + "," +
                      fmt_num(transcript.estimated_d) + "," + fmt_num(direct) + "\n");
        return;
    }
    json j = qshift::io::to_json(transcript);
    j["shift_direct"] = direct;
    j["unitary"] = {{"axis", {u(0), u(1), u(2)}}, {"phi", phi}};
    emit(cfg, dump(j));
}

struct ScanRow {
    std::string family;
    double param = 0.0;
    double d_max = 0.0;
    double beta_norm = 0.0;
    bool ppt_negative = false;
    double min_pt = 0.0;
    bool bound_violated = false;
    std::string method;
    bool certified = true;
};

ScanRow scan_one(const std::string& family, int index, int count, const RunConfig& cfg) {
    const double grid = count > 1 ? static_cast<double>(index) / (count - 1) : 1.0;
    ScanRow row;
    row.family = family;
    std::optional<qshift::BipartiteState> state;
    if (family == "separable") {
        auto sample = qshift::SeparableSampler(cfg.seed).at(static_cast<std::uint64_t>(index));
        row.param = sample.ensemble.size();
        state.emplace(std::move(sample.state));
    } else if (family == "werner-grid") {
        row.param = grid;
        state.emplace(qshift::werner_state(grid));
    } else if (family == "schmidt-grid") {
        row.param = grid;
        state.emplace(qshift::schmidt_state(grid, std::sqrt(std::max(0.0, 1.0 - grid * grid))));
    } else if (family == "random") {
        const int rank = 1 + index % 4;
        row.param = rank;
        state.emplace(qshift::RandomStateSampler(cfg.seed, {2, 2}, rank).at(static_cast<std::uint64_t>(index)));
    } else {
        throw qshift::Error(qshift::ErrorKind::Input, "unknown family '" + family + "'");
    }
    auto opts = cfg.dmax_options();
    opts.seed = qshift::substream_seed(cfg.seed, static_cast<std::uint64_t>(index));
    const auto rep = qshift::detect(*state, opts);
    row.d_max = rep.d_max;
    row.beta_norm = qshift::decompose(*state).beta_norm();
    row.ppt_negative = rep.ppt_negative;
    row.min_pt = rep.min_pt_eigenvalue;
    row.bound_violated = rep.bound_violated;
    row.method = std::string(qshift::to_string(rep.method));
    row.certified = rep.certified;
    return row;
}

void cmd_scan(const RunConfig& cfg, const std::string& family, int count) {
    static const std::vector<std::string> kFamilies{"separable", "werner-grid", "schmidt-grid", "random"};
    if (std::find(kFamilies.begin(), kFamilies.end(), family) == kFamilies.end())
        throw qshift::Error(qshift::ErrorKind::Input, "unknown family '" + family +
                                                          "' (separable, werner-grid, schmidt-grid, random)");
    if (count < 1) throw qshift::Error(qshift::ErrorKind::Input, "--count must be >= 1");

    std::vector<ScanRow> rows(static_cast<std::size_t>(count));
    const int workers = std::min(cfg.workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) rows[static_cast<std::size_t>(i)] = scan_one(family, i, count, cfg);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        {
            std::vector<std::jthread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (int i = w; i < count; i += workers)
                            rows[static_cast<std::size_t>(i)] = scan_one(family, i, count, cfg);
                    } catch (...) {
                        errors[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    double max_d = 0.0;
    int violations = 0;
    int ppt_neg = 0;
    for (const auto& r : rows) {
        max_d = std::max(max_d, r.d_max);
        violations += r.bound_violated ? 1 : 0;
        ppt_neg += r.ppt_negative ? 1 : 0;
    }

    if (cfg.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            arr.push_back({{"index", i}, {"family", r.family}, {"param", r.param}, {"d_max", r.d_max},
                           {"beta_norm", r.beta_norm}, {"ppt_negative", r.ppt_negative},
                           {"min_pt_eigenvalue", r.min_pt}, {"bound_violated", r.bound_violated},
                           {"method", r.method}, {"certified", r.certified}});
        }
        emit(cfg, dump({{"schema", 1},
                        {"rows", std::move(arr)},
                        {"summary",
                         {{"count", count}, {"max_d_max", max_d}, {"bound_violations", violations},
                          {"ppt_negative", ppt_neg}}}}));
        return;
    }

    std::ostringstream os;
    os << kScanSchema << "\n";
    os << "index,family,param,d_max,beta_norm,ppt_negative,min_pt_eigenvalue,bound_violated,method,certified\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << i << ',' << r.family << ',' << fmt_num(r.param) << ',' << fmt_num(r.d_max) << ','
           << fmt_num(r.beta_norm) << ',' << (r.ppt_negative ? 1 : 0) << ',' << fmt_num(r.min_pt) << ','
           << (r.bound_violated ? 1 : 0) << ',' << r.method << ',' << (r.certified ? 1 : 0) << '\n';
    }
    os << "# summary count=" << count << " max_d_max=" << fmt_num(max_d) << " bound_violations=" << violations
       << " ppt_negative=" << ppt_neg << "\n";
    emit(cfg, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal shift of bipartite states under local cyclic operations"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "RNG seed")->envname("QSHIFT_SEED");
    app.add_option("--restarts", cfg.restarts, "multi-start restarts for d_max")->envname("QSHIFT_RESTARTS");
    app.add_option("--max-iters", cfg.max_iters, "iterations per restart")->envname("QSHIFT_MAX_ITERS");
    app.add_option("--tol-herm", cfg.tol.herm, "Hermiticity tolerance")->envname("QSHIFT_TOL_HERM");
    app.add_option("--tol-psd", cfg.tol.psd, "positivity tolerance")->envname("QSHIFT_TOL_PSD");
    app.add_option("--tol-cyclic", cfg.tol.cyclic, "commutator tolerance")->envname("QSHIFT_TOL_CYCLIC");
    app.add_option("--tol-bound", cfg.tol.bound, "margin above 1/sqrt(2)")->envname("QSHIFT_TOL_BOUND");
    app.add_option("--eps-deg", cfg.tol.eps_deg, "eigenvalue merge threshold")->envname("QSHIFT_EPS_DEG");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("QSHIFT_FORMAT");
    app.add_option("--out", cfg.out, "write output to this file")->envname("QSHIFT_OUT");
    app.add_option("--workers", cfg.workers, "worker threads")->envname("QSHIFT_WORKERS");

    std::string state;
    auto add_state = [&](CLI::App* sub) {
        sub->add_option("--state", state, "builtin name or state JSON file")->required()->envname("QSHIFT_STATE");
    };

    auto* decompose = app.add_subcommand("decompose", "Bloch vectors and correlation matrix");
    add_state(decompose);
    auto* dmax = app.add_subcommand("dmax", "maximal shift over cyclic unitaries");
    add_state(dmax);
    auto* detect = app.add_subcommand("detect", "entanglement detection report");
    add_state(detect);

    std::string family;
    int count = 100;
    auto* scan = app.add_subcommand("scan", "batch scan of a state family (CSV)");
    scan->add_option("--family", family, "separable | werner-grid | schmidt-grid | random")
        ->required()
        ->envname("QSHIFT_FAMILY");
    scan->add_option("--count", count, "number of states")->envname("QSHIFT_COUNT");

    double phi = 0.0;
    std::string axis = "z";
    auto* chsh = app.add_subcommand("chsh", "two-stage CHSH observation of the shift");
    add_state(chsh);
    chsh->add_option("--phi", phi, "rotation angle of U = exp(i phi/2 u.sigma)")->envname("QSHIFT_PHI");
    chsh->add_option("--axis", axis, "rotation axis u: x, y, z or 'ux,uy,uz'")->envname("QSHIFT_AXIS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitInput;
    }

    try {
        cfg.validate();
        if (*scan && cfg.format == "json" && app.get_option("--format")->count() == 0 &&
            std::getenv("QSHIFT_FORMAT") == nullptr)
            cfg.format = "csv";
        if (*decompose) cmd_decompose(cfg, state);
        else if (*dmax) cmd_dmax(cfg, state);
        else if (*detect) cmd_detect(cfg, state);
        else if (*scan) cmd_scan(cfg, family, count);
        else if (*chsh) cmd_chsh(cfg, state, phi, axis);
    } catch (const qshift::Error& e) {
        std::cerr << "qshift: " << qshift::to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == qshift::ErrorKind::InternalConsistency ? kExitInternal : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "qshift: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
