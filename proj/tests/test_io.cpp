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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qshift/io.hpp"
#include "qshift/states.hpp"

using namespace qshift;
using qshift::io::json;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalConsistency;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("state JSON round trip") {
    const auto w = werner_state(0.3);
    const json j = io::state_to_json(w);
    CHECK(j["dims"] == json::array({2, 2}));
    CHECK(j["matrix"].size() == 16);
    CHECK(max_abs_diff(io::state_from_json(j).matrix(), w.matrix()) < 1e-15);
}

TEST_CASE("schema violations are input errors") {
    json j = io::state_to_json(bell_state());
    json missing = j;
    missing.erase("dims");
    CHECK(kind_of([&] { (void)io::state_from_json(missing); }) == ErrorKind::Input);
    json short_matrix = j;
    short_matrix["matrix"].erase(0);
    CHECK(kind_of([&] { (void)io::state_from_json(short_matrix); }) == ErrorKind::Input);
    json bad_entry = j;
    bad_entry["matrix"][0] = "x";
    CHECK(kind_of([&] { (void)io::state_from_json(bad_entry); }) == ErrorKind::Input);
    json not_state = j;
    not_state["matrix"][0] = json::array({2.0, 0.0});
    CHECK(kind_of([&] { (void)io::state_from_json(not_state); }) == ErrorKind::NotAState);
}

TEST_CASE("builtin grammar") {
    CHECK(max_abs_diff(io::builtin_state("bell").matrix(), bell_state().matrix()) == 0.0);
    CHECK(max_abs_diff(io::builtin_state("werner:0.5").matrix(), werner_state(0.5).matrix()) == 0.0);
    CHECK(max_abs_diff(io::builtin_state("schmidt:0.6").matrix(), schmidt_state(0.6, 0.8).matrix()) < 1e-15);
    CHECK(max_abs_diff(io::builtin_state("schmidt:0.6:0.8").matrix(), schmidt_state(0.6, 0.8).matrix()) < 1e-15);
    CHECK(io::builtin_state("maxmixed:2x3").dims() == Dims{2, 3});
    CHECK(io::builtin_state("maxmixed").dims() == Dims{2, 2});
    CHECK(max_abs_diff(io::builtin_state("cc5050").matrix(), classically_correlated_5050().matrix()) == 0.0);
    CHECK(kind_of([] { (void)io::builtin_state("werner"); }) == ErrorKind::Input);
    CHECK(kind_of([] { (void)io::builtin_state("werner:abc"); }) == ErrorKind::Input);
    CHECK(kind_of([] { (void)io::builtin_state("ghz"); }) == ErrorKind::Input);
}

TEST_CASE("load_state reads files and reports malformed JSON") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "qshift_io_good.json";
    const auto bad = dir / "qshift_io_bad.json";
    std::ofstream(good) << io::state_to_json(werner_state(0.25)).dump();
    std::ofstream(bad) << "{ \"dims\": [2, 2], ";
    CHECK(max_abs_diff(io::load_state(good.string()).matrix(), werner_state(0.25).matrix()) < 1e-15);
    CHECK(kind_of([&] { (void)io::load_state(bad.string()); }) == ErrorKind::Input);
    CHECK(kind_of([&] { (void)io::load_state((dir / "qshift_io_missing.json").string()); }) == ErrorKind::Input);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST_CASE("result serialization field names") {
    const json d = io::to_json(d_max(werner_state(0.5)));
    for (const char* key : {"d", "formula", "method", "certified", "cross_check_residual", "unitary"})
        CHECK_MESSAGE(d.contains(key), key);
    const json r = io::to_json(detect(werner_state(0.5)));
    for (const char* key : {"d_max", "bound_violated", "ppt_negative", "min_pt_eigenvalue", "gisin_Bmax",
                            "theorem_class", "classification"})
        CHECK_MESSAGE(r.contains(key), key);
}

}
