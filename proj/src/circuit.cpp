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

#include "qdc/circuit.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdc {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::S_DAG:
      return "S_DAG";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::SWAP:
      return "SWAP";
    case GateKind::PREP:
      return "PREP_PAULI_EIGENSTATE";
    case GateKind::MEASURE:
      return "MEASURE";
  }
  return "?";
}

std::string_view to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return "X";
    case PauliAxis::Y:
      return "Y";
    case PauliAxis::Z:
      return "Z";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::S_DAG, GateKind::CNOT,
                     GateKind::SWAP, GateKind::PREP, GateKind::MEASURE}) {
    if (to_string(k) == name) return k;
  }
  if (name == "PREP") return GateKind::PREP;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

PauliAxis axis_from_string(std::string_view name) {
  for (PauliAxis a : kAllAxes) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown Pauli axis '" + std::string(name) + "'");
}

double GateDurations::of(GateKind kind) const {
  auto it = ns.find(kind);
  if (it == ns.end()) {
    throw std::invalid_argument("no duration configured for gate " +
                                std::string(to_string(kind)));
  }
  return it->second;
}

Gate Gate::h(std::size_t q, const GateDurations& d) {
  return {GateKind::H, {q}, d.of(GateKind::H)};
}
Gate Gate::x(std::size_t q, const GateDurations& d) {
  return {GateKind::X, {q}, d.of(GateKind::X)};
}
Gate Gate::s_dag(std::size_t q, const GateDurations& d) {
  return {GateKind::S_DAG, {q}, d.of(GateKind::S_DAG)};
}
Gate Gate::cnot(std::size_t control, std::size_t target,
                const GateDurations& d) {
  return {GateKind::CNOT, {control, target}, d.of(GateKind::CNOT)};
}
Gate Gate::swap(std::size_t a, std::size_t b, const GateDurations& d) {
  return {GateKind::SWAP, {a, b}, d.of(GateKind::SWAP)};
}
Gate Gate::prep(std::size_t q, PauliAxis axis, int eigenindex) {
  return {GateKind::PREP, {q}, 0.0, axis, eigenindex};
}
Gate Gate::measure(std::size_t q, PauliAxis axis) {
  return {GateKind::MEASURE, {q}, 0.0, axis, 0};
}

std::size_t expected_arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::SWAP) ? 2 : 1;
}

void validate_gate(const Gate& gate, std::size_t num_qubits) {
  if (gate.qubits.size() != expected_arity(gate.kind)) {
    std::ostringstream os;
    os << to_string(gate.kind) << " expects " << expected_arity(gate.kind)
       << " qubit(s), got " << gate.qubits.size();
    throw std::invalid_argument(os.str());
  }
  for (std::size_t q : gate.qubits) {
    if (q >= num_qubits) {
      std::ostringstream os;
      os << to_string(gate.kind) << " on qubit " << q
         << " outside a register of " << num_qubits;
      throw std::invalid_argument(os.str());
    }
  }
  if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                " needs two distinct qubits");
  }
  if (!(gate.duration_ns >= 0.0)) {
    throw std::invalid_argument("gate duration must be >= 0");
  }
  if (gate.kind == GateKind::PREP && gate.eigenindex != 0 &&
      gate.eigenindex != 1) {
    throw std::invalid_argument("eigenindex must be 0 or 1");
  }
}

Circuit::Circuit(std::size_t num_qubits, std::string label)
    : num_qubits_(num_qubits),
      label_(std::move(label)),
      wire_state_(num_qubits, kWireFresh) {
  if (num_qubits == 0) {
    throw std::invalid_argument("a circuit needs at least one qubit");
  }
}

Circuit& Circuit::add(Gate gate) {
  validate_gate(gate, num_qubits_);
  for (std::size_t q : gate.qubits) {
    if (wire_state_[q] == kWireMeasured) {
      throw std::invalid_argument("gate after a measurement on qubit " +
                                  std::to_string(q));
    }
    if (gate.kind == GateKind::PREP && wire_state_[q] != kWireFresh) {
      throw std::invalid_argument("preparation must be first on qubit " +
                                  std::to_string(q));
    }
  }
  for (std::size_t q : gate.qubits) {
    wire_state_[q] = gate.kind == GateKind::MEASURE ? kWireMeasured : kWireUsed;
  }
  gates_.push_back(std::move(gate));
  return *this;
}

void Circuit::validate() const {
  Circuit copy(num_qubits_, label_);
  for (const Gate& g : gates_) copy.add(g);
}

Circuit retime(const Circuit& circuit, const GateDurations& durations) {
  Circuit out(circuit.num_qubits(), circuit.label());
  for (Gate g : circuit.gates()) {
    g.duration_ns = durations.of(g.kind);
    out.add(std::move(g));
  }
  return out;
}

Circuit build_ghz_ladder(std::size_t m, const GateDurations& durations) {
  if (m < 2) throw std::invalid_argument("GHZ ladder needs m >= 2");
  Circuit c(m, "ghz_" + std::to_string(m));
  c.add(Gate::h(0, durations));
  for (std::size_t i = 0; i + 1 < m; ++i) c.add(Gate::cnot(i, i + 1, durations));
  for (std::size_t i = m / 2; i < m; ++i) c.add(Gate::x(i, durations));
  return c;
}

Circuit build_ghz_circuit(std::size_t m, const GateDurations& durations) {
  if (m < 2 || m % 2 != 0) {
    throw std::invalid_argument("GHZ circuit needs an even m >= 2, got " +
                                std::to_string(m));
  }
  return build_ghz_ladder(m, durations);
}

std::size_t ghz_ladder_cnot_index(std::size_t i) { return i + 1; }

// ---------------------------------------------------------------------------

CircuitDag::CircuitDag(const Circuit& circuit)
    : num_qubits_(circuit.num_qubits()), gates_(circuit.gates()) {
  const std::size_t n = num_qubits_;
  const std::size_t g = gates_.size();
  vertices_.reserve(g + 2 * n);
  for (std::size_t i = 0; i < g; ++i) vertices_.push_back({VertexType::Gate, i});
  for (std::size_t q = 0; q < n; ++q) vertices_.push_back({VertexType::Init, q});
  for (std::size_t q = 0; q < n; ++q)
    vertices_.push_back({VertexType::Terminal, q});
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());

  std::vector<std::size_t> frontier(n);
  for (std::size_t q = 0; q < n; ++q) frontier[q] = init_vertex(q);
  auto connect = [&](std::size_t s, std::size_t t, std::size_t q) {
    out_[s].push_back(edges_.size());
    in_[t].push_back(edges_.size());
    edges_.push_back({s, t, q});
  };
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t q : gates_[i].qubits) {
      connect(frontier[q], i, q);
      frontier[q] = i;
    }
  }
  for (std::size_t q = 0; q < n; ++q) connect(frontier[q], terminal_vertex(q), q);
}

std::vector<std::size_t> CircuitDag::wire_edges(std::size_t q) const {
  std::vector<std::size_t> out;
  std::size_t v = init_vertex(q);
  while (v != terminal_vertex(q)) {
    std::size_t next_edge = edges_.size();
    for (std::size_t e : out_[v]) {
      if (edges_[e].qubit == q) {
        next_edge = e;
        break;
      }
    }
    if (next_edge == edges_.size()) {
      throw std::logic_error("broken wire in circuit DAG");
    }
    out.push_back(next_edge);
    v = edges_[next_edge].target;
  }
  return out;
}

std::vector<std::size_t> CircuitDag::wire_path(std::size_t q) const {
  std::vector<std::size_t> path{init_vertex(q)};
  for (std::size_t e : wire_edges(q)) path.push_back(edges_[e].target);
  return path;
}

std::ptrdiff_t CircuitDag::find_edge(std::size_t source, std::size_t target,
                                     std::size_t qubit) const {
  if (source >= out_.size()) return -1;
  for (std::size_t e : out_[source]) {
    if (edges_[e].target == target && edges_[e].qubit == qubit) {
      return static_cast<std::ptrdiff_t>(e);
    }
  }
  return -1;
}

std::vector<std::size_t> CircuitDag::topological_order() const {
  // INIT vertices first, then gates by index, then TERMINAL vertices; with
  // this priority the gate subsequence keeps the original gate order.
  auto rank = [&](std::size_t v) {
    const int type = vertices_[v].type == VertexType::Init       ? 0
                     : vertices_[v].type == VertexType::Gate     ? 1
                                                                 : 2;
    return std::pair{type, v};
  };
  std::vector<std::size_t> indegree(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) indegree[v] = in_[v].size();
  std::priority_queue<std::pair<int, std::size_t>,
                      std::vector<std::pair<int, std::size_t>>, std::greater<>>
      ready;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (indegree[v] == 0) ready.push(rank(v));
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top().second;
    ready.pop();
    order.push_back(v);
    for (std::size_t e : out_[v]) {
      if (--indegree[edges_[e].target] == 0) ready.push(rank(edges_[e].target));
    }
  }
  return order;
}

bool CircuitDag::is_acyclic() const {
  return topological_order().size() == vertices_.size();
}

Circuit to_circuit(const CircuitDag& dag) {
  Circuit c(dag.num_qubits());
  for (std::size_t v : dag.topological_order()) {
    if (dag.vertices()[v].type == VertexType::Gate) {
      c.add(dag.gates()[dag.vertices()[v].index]);
    }
  }
  return c;
}

std::vector<Gate> wire_gates(const Circuit& circuit, std::size_t q) {
  std::vector<Gate> out;
  for (const Gate& g : circuit.gates()) {
    if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) {
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace qdc
