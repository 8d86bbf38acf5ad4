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

#include "qshift/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "qshift/states.hpp"

namespace qshift::io {

namespace {

[[noreturn]] void input_error(const std::string& msg) { throw Error(ErrorKind::Input, msg); }

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        input_error("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view text, std::string_view what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        input_error("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

bool is_builtin_name(std::string_view name) {
    return name == "bell" || name == "cc5050" || name == "schmidt" || name == "werner" || name == "maxmixed";
}

}  // namespace

BipartiteState state_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object()) input_error("state JSON must be an object");
    if (!j.contains("dims") || !j.contains("matrix")) input_error("state JSON needs 'dims' and 'matrix'");
    const json& dims_j = j.at("dims");
    if (!dims_j.is_array() || dims_j.size() != 2 || !dims_j[0].is_number_integer() ||
        !dims_j[1].is_number_integer())
        input_error("'dims' must be [N_A, N_B] with integer entries");
    const Dims dims{dims_j[0].get<int>(), dims_j[1].get<int>()};
    if (dims.a < 2 || dims.b < 2 || dims.total() > 64) input_error("'dims' entries must be in [2, 64 total]");
    const json& m = j.at("matrix");
    const auto n = static_cast<std::size_t>(dims.total());
    if (!m.is_array() || m.size() != n * n)
        input_error("'matrix' must list " + std::to_string(n * n) + " [re, im] entries");
    CMatrix rho(dims.total(), dims.total());
    for (std::size_t k = 0; k < m.size(); ++k) {
        const json& e = m[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            input_error("matrix entry " + std::to_string(k) + " is not [re, im]");
        rho(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
            cplx(e[0].get<double>(), e[1].get<double>());
    }
    return BipartiteState::from_matrix(rho, dims, tol);
}

json state_to_json(const BipartiteState& state) {
    json m = json::array();
    const CMatrix& rho = state.matrix();
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.cols(); ++c) m.push_back({rho(r, c).real(), rho(r, c).imag()});
    return {{"dims", {state.dims().a, state.dims().b}}, {"matrix", std::move(m)}};
}

BipartiteState builtin_state(std::string_view source) {
    const auto parts = split(source, ':');
    const std::string_view name = parts.front();
    const std::size_t nparams = parts.size() - 1;
    auto expect_params = [&](std::size_t lo, std::size_t hi) {
        if (nparams < lo || nparams > hi)
            input_error("builtin '" + std::string(name) + "' takes " + std::to_string(lo) + ".." +
                        std::to_string(hi) + " parameters");
    };
    if (name == "bell") {
        expect_params(0, 0);
        return bell_state();
    }
    if (name == "cc5050") {
        expect_params(0, 0);
        return classically_correlated_5050();
    }
    if (name == "schmidt") {
        expect_params(1, 2);
        const double k1 = parse_double(parts[1], "k1");
        if (nparams == 2) return schmidt_state(k1, parse_double(parts[2], "k2"));
        if (std::abs(k1) > 1.0) input_error("schmidt:k1 needs |k1| <= 1");
        return schmidt_state(k1, std::sqrt(std::max(0.0, 1.0 - k1 * k1)));
    }
    if (name == "werner") {
        expect_params(1, 1);
        return werner_state(parse_double(parts[1], "p"));
    }
    if (name == "maxmixed") {
        expect_params(0, 1);
        if (nparams == 0) return maximally_mixed({2, 2});
        const auto ab = split(parts[1], 'x');
        if (ab.size() != 2) input_error("maxmixed dims must look like 2x3");
        return maximally_mixed({parse_int(ab[0], "N_A"), parse_int(ab[1], "N_B")});
    }
    input_error("unknown builtin state '" + std::string(name) + "'");
}

BipartiteState load_state(const std::string& source, const Tolerances& tol) {
    const auto name = split(source, ':').front();
    if (is_builtin_name(name)) return builtin_state(source);
    std::ifstream in(source);
    if (!in) input_error("cannot open state file '" + source + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        input_error("malformed state JSON in '" + source + "': " + e.what());
    }
    return state_from_json(j, tol);
}

json to_json(const RMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const RVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const BlochForm& form) {
    return {{"dims", {form.dims.a, form.dims.b}},
            {"rA", to_json(form.rA)},
            {"rB", to_json(form.rB)},
            {"beta", to_json(form.beta)},
            {"norm_rA", form.rA.norm()},
            {"norm_rB", form.rB.norm()},
            {"norm_beta", form.beta_norm()}};
}

json to_json(const CyclicUnitary& u) {
    json blocks = json::array();
    for (const auto& b : u.blocks())
        blocks.push_back({{"eigenvalue", b.eigenvalue}, {"indices", b.indices}, {"unitary", to_json(b.unitary)}});
    std::ostringstream id;
    id << std::hex << u.reference_state_id();
    return {{"matrix", to_json(u.matrix())}, {"eigenspace_blocks", std::move(blocks)},
            {"reference_state_id", id.str()}};
}

json to_json(const ShiftResult& r) {
    const auto& dg = r.diagnostics;
    return {{"d", r.d},
            {"formula", std::string(to_string(r.formula))},
            {"method", std::string(to_string(r.method))},
            {"certified", r.certified},
            {"cross_check_residual", r.cross_check_residual},
            {"unitary", to_json(r.unitary)},
            {"diagnostics",
             {{"restarts", dg.restarts},
              {"converged_restarts", dg.converged_restarts},
              {"iterations", dg.iterations},
              {"evaluations", dg.evaluations},
              {"gradient_norm", dg.gradient_norm},
              {"best_restart", dg.best_restart}}}};
}

json to_json(const DetectionReport& r) {
    return {{"d_max", r.d_max},
            {"bound_violated", r.bound_violated},
            {"ppt_negative", r.ppt_negative},
            {"min_pt_eigenvalue", r.min_pt_eigenvalue},
            {"gisin_Bmax", r.gisin_Bmax ? json(*r.gisin_Bmax) : json(nullptr)},
            {"theorem_class", r.theorem_class},
            {"classification", std::string(to_string(r.classification))},
            {"ppt_exact", r.ppt_exact},
            {"theorem_alpha", r.theorem_alpha},
            {"method", std::string(to_string(r.method))},
            {"certified", r.certified}};
}

json to_json(const MeasurementSettings& s) {
    auto v3 = [](const Vec3& v) { return json::array({v(0), v(1), v(2)}); };
    return {{"n1", v3(s.n1)}, {"n2", v3(s.n2)}, {"m1", v3(s.m1)}, {"m2", v3(s.m2)}};
}

json to_json(const ChshTranscript& t) {
    return {{"stage1", {{"settings", to_json(t.stage1.settings)}, {"F_max", t.stage1.f_max}}},
            {"stage2",
             {{"settings", to_json(t.stage2.settings)},
              {"F", t.stage2.f},
              {"search_settings", to_json(t.stage2.search_settings)},
              {"F_search", t.stage2.f_search},
              {"fixed_axes_optimal", t.stage2.fixed_axes_optimal}}},
            {"recovered_rotation", to_json(RMatrix(t.recovered_rotation))},
            {"recovered_beta_f", to_json(RMatrix(t.recovered_beta_f))},
            {"estimated_d", t.estimated_d}};
}

}  // namespace qshift::io
