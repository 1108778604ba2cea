// Copyright 2026 The ffzne Authors
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

#include <string>

#include <json.hpp>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"
#include "ffzne/layout.hpp"
#include "ffzne/mitigation.hpp"
#include "ffzne/scoring.hpp"
#include "ffzne/selection.hpp"

namespace ffzne {

using Json = nlohmann::json;

// File helpers; write is atomic-ish (write then rename not needed at desk
// scale) and always ends with a newline so outputs diff cleanly.
Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &value);

// Device schema:
// { "name": str, "num_qubits": int, "edges": [[i, j], ...],
//   "two_qubit_error": {"i-j": float, ...}, "one_qubit_error": {"i": float} }
// Edge keys are canonical min-max.
Json device_to_json(const DeviceModel &model);
DeviceModel device_from_json(const Json &j);

// Circuit schema:
// { "num_qubits": int, "gates": [{"kind": str, "qubits": [int], "theta": f?}] }
Json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const Json &j);

// Layouts schema:
// { "device": str, "circuit_hash": str, "truncated": bool,
//   "layouts": [[int, ...], ...] }
Json layouts_to_json(const LayoutSet &set);
LayoutSet layouts_from_json(const Json &j);

// Scores schema:
// { "method": str, "entries": [{"layout": [...], "score": f}],
//   "mean": f, "stddev": f }
Json scores_to_json(const ScoreTable &table);
ScoreTable scores_from_json(const Json &j);

// Selection triple record; indices are 1-based ("index_base": 1).
Json triple_to_json(const SelectionTriple &triple, double wall_time_ms = 0.0);
SelectionTriple triple_from_json(const Json &j);

Json report_to_json(const MitigationReport &report);
MitigationReport report_from_json(const Json &j);

}  // namespace ffzne
