// Copyright 2026 The QDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "qdc/circuit.hpp"

namespace qdc {

/// {"num_qubits": int, "label": str,
///  "gates": [{"kind": str, "qubits": [int], "params": {...}}]}
/// params carries "duration_ns" for every gate, plus "axis" for PREP and
/// MEASURE and "eigenindex" for PREP.
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

/// Reads/writes a whole JSON document; errors carry the path.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qdc
