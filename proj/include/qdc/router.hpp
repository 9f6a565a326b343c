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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/density.hpp"

namespace qdc {

/// Undirected coupling map: CNOT and SWAP are allowed on listed pairs only.
class ConnectivityGraph {
 public:
  ConnectivityGraph(std::size_t num_qubits,
                    std::vector<std::pair<std::size_t, std::size_t>> edges,
                    std::string name = {});

  /// Every pair connected.
  static ConnectivityGraph complete(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::string& name() const { return name_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  const std::vector<std::size_t>& neighbors(std::size_t q) const {
    return adjacency_[q];
  }
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t degree(std::size_t q) const { return adjacency_[q].size(); }
  bool is_connected() const;

  /// BFS distance; neighbors are visited lowest index first.
  std::size_t distance(std::size_t a, std::size_t b) const;
  /// Shortest path a .. b, lowest physical index preferred on ties.
  std::vector<std::size_t> shortest_path(std::size_t a, std::size_t b) const;

 private:
  std::size_t num_qubits_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::string name_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// {"n": int, "edges": [[a, b], ...]} with optional "name".
ConnectivityGraph coupling_map_from_json(const nlohmann::json& j);
nlohmann::json coupling_map_to_json(const ConnectivityGraph& graph);
ConnectivityGraph load_coupling_map(const std::string& path);

/// The 20-qubit Johannesburg coupling map shipped in data/johannesburg.json.
const ConnectivityGraph& johannesburg_graph();

struct RoutedCircuit {
  /// Gates over physical qubit indices of the graph.
  Circuit circuit;
  std::vector<std::size_t> initial_mapping;  // logical -> physical
  std::vector<std::size_t> final_mapping;    // logical -> physical
  std::size_t swap_count = 0;
};

/// Logical -> physical placement. If the two-qubit interaction graph of the
/// circuit is a disjoint union of simple paths, they are laid end to end and
/// mapped onto a simple path of the coupling graph (first one found from the
/// lowest start vertex). Falls back to the identity mapping.
std::vector<std::size_t> line_subgraph_placement(const Circuit& circuit,
                                                 const ConnectivityGraph& graph);

enum class Placement { Line, Identity };

/// Greedy router. Gates are processed in order; a two-qubit gate whose
/// operands sit at distance d > 1 gets d - 1 SWAPs moving its first operand
/// along a shortest path. `seed` is accepted for interface stability; the
/// algorithm has no random choices.
RoutedCircuit route(const Circuit& circuit, const ConnectivityGraph& graph,
                    std::uint64_t seed = 0,
                    Placement placement = Placement::Line,
                    const GateDurations& durations = {});

/// The routed circuit restricted to the physical qubits it touches,
/// relabelled 0..k-1 in increasing physical order, with the logical qubit
/// each compact qubit holds at the end. Logical qubits are always touched.
struct CompactCircuit {
  Circuit circuit;
  std::vector<std::size_t> logical_to_compact;  // at the end of the circuit
};
CompactCircuit compact(const RoutedCircuit& routed);

/// Reorders a distribution over compact qubits into logical qubit order.
/// Compact qubits that carry no logical qubit are summed out.
OutputDistribution to_logical_order(const OutputDistribution& compact_dist,
                                    const std::vector<std::size_t>& logical_to_compact);

}  // namespace qdc
