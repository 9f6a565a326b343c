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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qdc {

enum class GateKind { H, X, S_DAG, CNOT, SWAP, PREP, MEASURE };

/// Pauli measurement/preparation axis. The integer value is used as a tensor
/// index everywhere (X=0, Y=1, Z=2).
enum class PauliAxis : int { X = 0, Y = 1, Z = 2 };

inline constexpr PauliAxis kAllAxes[] = {PauliAxis::X, PauliAxis::Y,
                                         PauliAxis::Z};

std::string_view to_string(GateKind kind);
std::string_view to_string(PauliAxis axis);
GateKind gate_kind_from_string(std::string_view name);
PauliAxis axis_from_string(std::string_view name);

/// Durations per gate kind, in nanoseconds.
struct GateDurations {
  std::map<GateKind, double> ns{
      {GateKind::H, 50.0},    {GateKind::X, 50.0},
      {GateKind::S_DAG, 50.0}, {GateKind::CNOT, 300.0},
      {GateKind::SWAP, 900.0}, {GateKind::PREP, 0.0},
      {GateKind::MEASURE, 0.0}};

  double of(GateKind kind) const;
  bool operator==(const GateDurations&) const = default;
};

/// One circuit operation. PREP and MEASURE are pseudo-gates: PREP puts a
/// fresh qubit into eigenstate `eigenindex` of `axis` (0 is the +1
/// eigenvector), MEASURE reads a qubit out along `axis`.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<std::size_t> qubits;
  double duration_ns = 0.0;
  PauliAxis axis = PauliAxis::Z;
  int eigenindex = 0;

  static Gate h(std::size_t q, const GateDurations& d = {});
  static Gate x(std::size_t q, const GateDurations& d = {});
  static Gate s_dag(std::size_t q, const GateDurations& d = {});
  static Gate cnot(std::size_t control, std::size_t target,
                   const GateDurations& d = {});
  static Gate swap(std::size_t a, std::size_t b, const GateDurations& d = {});
  static Gate prep(std::size_t q, PauliAxis axis, int eigenindex);
  static Gate measure(std::size_t q, PauliAxis axis);

  std::size_t arity() const { return qubits.size(); }
  bool is_pseudo() const {
    return kind == GateKind::PREP || kind == GateKind::MEASURE;
  }
  bool operator==(const Gate&) const = default;
};

/// Number of qubits a gate of this kind acts on.
std::size_t expected_arity(GateKind kind);

/// Throws std::invalid_argument when the gate breaks an arity, distinctness,
/// range or duration invariant.
void validate_gate(const Gate& gate, std::size_t num_qubits);

class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits, std::string label = {});

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Appends a gate. Rejects gates placed after a MEASURE on any of their
  /// wires and PREP gates that are not first on their wire.
  Circuit& add(Gate gate);

  /// Re-checks every invariant on the whole gate list.
  void validate() const;

  bool operator==(const Circuit&) const = default;

 private:
  static constexpr unsigned char kWireFresh = 0;
  static constexpr unsigned char kWireUsed = 1;
  static constexpr unsigned char kWireMeasured = 2;

  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::string label_;
  std::vector<unsigned char> wire_state_;
};

/// Copy of `circuit` with every gate duration taken from `durations`.
Circuit retime(const Circuit& circuit, const GateDurations& durations);

/// H on qubit 0, a CNOT ladder q_i -> q_{i+1}, then X on qubits m/2 .. m-1.
/// The noiseless output is (|0..01..1> + |1..10..0>)/sqrt(2).
/// Requires m >= 2 and m even.
Circuit build_ghz_circuit(std::size_t m, const GateDurations& durations = {});

/// Same ladder construction without the parity restriction; used for cut
/// placement on odd-width ladders.
Circuit build_ghz_ladder(std::size_t m, const GateDurations& durations = {});

/// Gate index of the ladder CNOT q_{i} -> q_{i+1} inside build_ghz_ladder(m).
std::size_t ghz_ladder_cnot_index(std::size_t i);

// ---------------------------------------------------------------------------
// DAG view

enum class VertexType { Gate, Init, Terminal };

struct DagVertex {
  VertexType type = VertexType::Gate;
  /// Gate index for Gate vertices; qubit index for Init/Terminal vertices.
  std::size_t index = 0;
  bool operator==(const DagVertex&) const = default;
};

struct DagEdge {
  std::size_t source = 0;  // vertex id
  std::size_t target = 0;  // vertex id
  std::size_t qubit = 0;
  bool operator==(const DagEdge&) const = default;
};

/// Vertex ids: gates first (id == gate index), then one INIT vertex per
/// wire, then one TERMINAL vertex per wire.
class CircuitDag {
 public:
  explicit CircuitDag(const Circuit& circuit);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_gates() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<DagVertex>& vertices() const { return vertices_; }
  const std::vector<DagEdge>& edges() const { return edges_; }

  std::size_t gate_vertex(std::size_t gate_index) const { return gate_index; }
  std::size_t init_vertex(std::size_t q) const { return gates_.size() + q; }
  std::size_t terminal_vertex(std::size_t q) const {
    return gates_.size() + num_qubits_ + q;
  }

  /// Edge ids leaving / entering a vertex.
  const std::vector<std::size_t>& out_edges(std::size_t v) const {
    return out_[v];
  }
  const std::vector<std::size_t>& in_edges(std::size_t v) const {
    return in_[v];
  }

  /// Edge ids along wire q, from INIT to TERMINAL.
  std::vector<std::size_t> wire_edges(std::size_t q) const;

  /// Vertex ids along wire q, from INIT to TERMINAL.
  std::vector<std::size_t> wire_path(std::size_t q) const;

  /// Index of the wire edge (source -> target) on `qubit`, if any.
  std::ptrdiff_t find_edge(std::size_t source, std::size_t target,
                           std::size_t qubit) const;

  bool is_acyclic() const;

  /// Kahn order; among ready vertices INIT comes first, then the gate with
  /// the smallest index, then TERMINAL.
  std::vector<std::size_t> topological_order() const;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::vector<DagVertex> vertices_;
  std::vector<DagEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

inline CircuitDag to_dag(const Circuit& circuit) { return CircuitDag(circuit); }

/// Serializes the DAG back into a gate list in topological order.
Circuit to_circuit(const CircuitDag& dag);

/// Gate subsequence touching wire q, in order.
std::vector<Gate> wire_gates(const Circuit& circuit, std::size_t q);

}  // namespace qdc
