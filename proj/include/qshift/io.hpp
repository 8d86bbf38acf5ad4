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

#pragma once

// JSON (de)serialization and state sources for the command-line tool.
//
// State files: { "dims": [N_A, N_B], "matrix": [[re, im], ...] } with the
// (N_A N_B)^2 entries listed row-major. Builtin names follow
// `name[:param[:param]]`: bell, cc5050, schmidt:k1[:k2], werner:p,
// maxmixed[:AxB].

#include <string>
#include <string_view>

#include <json.hpp>

#include "qshift/analysis.hpp"
#include "qshift/bloch.hpp"
#include "qshift/chsh.hpp"
#include "qshift/cyclic.hpp"

namespace qshift::io {

using nlohmann::json;

/// Throws Error(Input) on a schema violation, NotAState etc. from validation.
[[nodiscard]] BipartiteState state_from_json(const json& j, const Tolerances& tol = {});
[[nodiscard]] json state_to_json(const BipartiteState& state);

/// Throws Error(Input) for an unknown name or malformed parameter.
[[nodiscard]] BipartiteState builtin_state(std::string_view source);

/// Builtin name if it parses as one, otherwise a JSON file path.
[[nodiscard]] BipartiteState load_state(const std::string& source, const Tolerances& tol = {});

[[nodiscard]] json to_json(const RMatrix& m);
[[nodiscard]] json to_json(const RVector& v);
[[nodiscard]] json to_json(const CMatrix& m);
[[nodiscard]] json to_json(const BlochForm& form);
[[nodiscard]] json to_json(const CyclicUnitary& u);
[[nodiscard]] json to_json(const ShiftResult& r);
[[nodiscard]] json to_json(const DetectionReport& r);
[[nodiscard]] json to_json(const MeasurementSettings& s);
[[nodiscard]] json to_json(const ChshTranscript& t);

}  // namespace qshift::io
