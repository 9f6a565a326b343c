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

#include "qdc/circuit_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdc {

nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : circuit.gates()) {
    nlohmann::json params = {{"duration_ns", g.duration_ns}};
    if (g.kind == GateKind::PREP || g.kind == GateKind::MEASURE) {
      params["axis"] = std::string(to_string(g.axis));
    }
    if (g.kind == GateKind::PREP) params["eigenindex"] = g.eigenindex;
    gates.push_back({{"kind", std::string(to_string(g.kind))},
                     {"qubits", g.qubits},
                     {"params", params}});
  }
  return {{"num_qubits", circuit.num_qubits()},
          {"label", circuit.label()},
          {"gates", gates}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num_qubits") || !j.contains("gates")) {
    throw std::invalid_argument(
        "circuit JSON needs \"num_qubits\" and \"gates\" fields");
  }
  Circuit c(j.at("num_qubits").get<std::size_t>(),
            j.value("label", std::string{}));
  GateDurations defaults;
  for (const auto& jg : j.at("gates")) {
    Gate g;
    g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
    g.qubits = jg.at("qubits").get<std::vector<std::size_t>>();
    const nlohmann::json params = jg.value("params", nlohmann::json::object());
    g.duration_ns = params.value("duration_ns", defaults.of(g.kind));
    if (params.contains("axis")) {
      g.axis = axis_from_string(params.at("axis").get<std::string>());
    }
    g.eigenindex = params.value("eigenindex", 0);
    c.add(std::move(g));
  }
  return c;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qdc
