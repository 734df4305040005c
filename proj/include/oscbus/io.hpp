// Copyright 2026 The oscbus Authors
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

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "oscbus/analysis.hpp"
#include "oscbus/grover.hpp"
#include "oscbus/model.hpp"

namespace oscbus {

inline constexpr int kProgramSchemaVersion = 1;
inline constexpr int kGroverSchemaVersion = 1;

nlohmann::json to_json(const InternalOperator& op);
InternalOperator internal_operator_from_json(const nlohmann::json& j);

/// {"schema_version", "n_qubits", "steps": [...]}; each step is either
/// {"kind": "sequence", "frame": "ZZX", "segments": [...]} or
/// {"kind": "ideal_local", "axis", "angle", "qubit"}.
nlohmann::json to_json(const Program& prog);
/// Throws InvalidArgument on a malformed document or an unknown schema version.
Program program_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GateReport& rep);
nlohmann::json to_json(const GroverResult& result);

/// "iteration,probability" rows, iteration 0 being the prepared superposition.
void write_grover_csv(std::ostream& out, const GroverResult& result);

/// Two-space indented dump followed by a newline.
std::string dump(const nlohmann::json& j);

}  // namespace oscbus
