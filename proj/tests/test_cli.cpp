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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef QSHIFT_CLI
#error "QSHIFT_CLI must name the command-line binary"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(QSHIFT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("decompose") {
    const auto j = run_json("decompose --state bell");
    CHECK(j["beta"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["beta"][1][1].get<double>() == doctest::Approx(-1.0));
    CHECK(j["beta"][2][2].get<double>() == doctest::Approx(1.0));
    const auto z = run_json("decompose --state maxmixed:2x2");
    CHECK(z["norm_beta"].get<double>() == 0.0);
}

TEST_CASE("dmax") {
    CHECK(run_json("dmax --state schmidt:0.6")["d"].get<double>() == doctest::Approx(0.96).epsilon(1e-9));
    CHECK(run_json("dmax --state werner:1.0")["d"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(run_json("dmax --state cc5050")["d"].get<double>() - 1 / std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("detect") {
    const auto w8 = run_json("detect --state werner:0.8");
    CHECK(w8["bound_violated"].get<bool>());
    const auto w5 = run_json("detect --state werner:0.5");
    CHECK_FALSE(w5["bound_violated"].get<bool>());
    CHECK(w5["ppt_negative"].get<bool>());
    CHECK(run_json("detect --state schmidt:1.0")["classification"] == "product-like");
}

TEST_CASE("chsh") {
    CHECK(run_json("chsh --state bell --phi 3.14159 --axis z")["estimated_d"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(run_json("chsh --state bell --phi 0 --axis z")["estimated_d"].get<double>() < 1e-6);
    const auto s = run_json("chsh --state schmidt:0.6 --phi 3.14159 --axis z");
    CHECK(s["estimated_d"].get<double>() == doctest::Approx(0.96).epsilon(1e-5));
    CHECK(s["stage1"]["F_max"].get<double>() == doctest::Approx(s["stage2"]["F"].get<double>()).epsilon(1e-9));
}

TEST_CASE("scan: Schmidt grid follows 2 k1 k2") {
    const auto r = run("scan --family schmidt-grid --count 101");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# qshift-scan schema=1\n", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 102);
    CHECK(rows[0][0] == "index");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double k1 = std::stod(rows[i][2]);
        CHECK(std::stod(rows[i][3]) == doctest::Approx(2 * k1 * std::sqrt(1 - k1 * k1)).epsilon(1e-9));
    }
}

TEST_CASE("scan: Werner grid gives d_max = p") {
    const auto rows = csv_rows(run("scan --family werner-grid --count 11").out);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][3]) == doctest::Approx(std::stod(rows[i][2])).epsilon(1e-9));
}

TEST_CASE("scan: summary line and worker independence") {
    const auto a = run("scan --family random --count 40 --seed 3");
    const auto b = run("scan --family random --count 40 --seed 3 --workers 4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# summary count=40 max_d_max=") != std::string::npos);
    CHECK(run("scan --family random --count 40 --seed 4").out != a.out);
}

TEST_CASE("same seed, same bytes") {
    for (const char* args : {"scan --family separable --count 50 --seed 42", "dmax --state maxmixed:2x3 --seed 9",
                             "chsh --state schmidt:0.7 --phi 1.0 --seed 1"}) {
        CAPTURE(args);
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("environment overrides") {
    const auto a = run("scan --family separable --count 5 --seed 11");
    const auto b = run("scan --family separable --count 5").out;
    CHECK(run("--help").code == 0);
    const auto env = run("").code;  // no subcommand
    CHECK(env == 2);
    const std::string with_env = std::string("QSHIFT_SEED=11 ") + QSHIFT_CLI + " scan --family separable --count 5";
    FILE* p = popen(with_env.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    pclose(p);
    CHECK(out == a.out);
    CHECK(out != b);
}

TEST_CASE("output file and formats") {
    const auto path = std::filesystem::temp_directory_path() / "qshift_cli_out.json";
    REQUIRE(run("dmax --state bell --out " + path.string()).code == 0);
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["d"].get<double>() == doctest::Approx(1.0));
    std::filesystem::remove(path);
    const auto csv = run("dmax --state bell --format csv");
    CHECK(csv.out.rfind("d_max,", 0) == 0);
    const auto sj = run_json("scan --family werner-grid --count 3 --format json");
    CHECK(sj["rows"].size() == 3);
    CHECK(sj["summary"]["max_d_max"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exit codes for bad input") {
    CHECK(run("dmax --state does-not-exist.json").code == 2);
    CHECK(run("scan --family nonsense --count 3").code == 2);
    CHECK(run("dmax --state werner:1.5").code == 2);
    CHECK(run("dmax --state bell --restarts 0").code == 2);
    CHECK(run("dmax --state bell --tol-herm -1").code == 2);
    CHECK(run("chsh --state schmidt:0.6 --phi 1 --axis x").code == 2);
    CHECK(run("dmax --state bell --format xml").code == 2);
    const auto path = std::filesystem::temp_directory_path() / "qshift_cli_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK(run("decompose --state " + path.string()).code == 2);
    std::filesystem::remove(path);
}

}
