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

#include "qdc/router.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>

#include "coupling_maps.hpp"
#include "qdc/circuit_json.hpp"

namespace qdc {

ConnectivityGraph::ConnectivityGraph(
    std::size_t num_qubits, std::vector<std::pair<std::size_t, std::size_t>> edges,
    std::string name)
    : num_qubits_(num_qubits), edges_(std::move(edges)), name_(std::move(name)),
      adjacency_(num_qubits) {
  if (num_qubits == 0) throw std::invalid_argument("empty coupling graph");
  for (auto [a, b] : edges_) {
    if (a >= num_qubits || b >= num_qubits) {
      throw std::invalid_argument("coupling edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") out of range");
    }
    if (a == b) throw std::invalid_argument("self-loop in coupling graph");
    if (adjacent(a, b)) continue;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& n : adjacency_) std::sort(n.begin(), n.end());
  if (!is_connected()) throw std::invalid_argument("coupling graph is not connected");
}

ConnectivityGraph ConnectivityGraph::complete(std::size_t num_qubits) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < num_qubits; ++a)
    for (std::size_t b = a + 1; b < num_qubits; ++b) edges.emplace_back(a, b);
  return ConnectivityGraph(num_qubits, std::move(edges), "complete");
}

bool ConnectivityGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& n = adjacency_.at(a);
  return std::find(n.begin(), n.end(), b) != n.end();
}

bool ConnectivityGraph::is_connected() const {
  std::vector<bool> seen(num_qubits_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_qubits_;
}

std::vector<std::size_t> ConnectivityGraph::shortest_path(std::size_t a,
                                                          std::size_t b) const {
  if (a >= num_qubits_ || b >= num_qubits_) throw std::out_of_range("physical qubit");
  // BFS from b so that walking parents from a gives a path a .. b with the
  // lowest-index choice at every step.
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(num_qubits_, none);
  std::deque<std::size_t> queue{b};
  dist[b] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adjacency_[v]) {
      if (dist[w] == none) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> path{a};
  while (path.back() != b) {
    const std::size_t v = path.back();
    for (std::size_t w : adjacency_[v]) {
      if (dist[w] + 1 == dist[v]) {
        path.push_back(w);
        break;
      }
    }
  }
  return path;
}

std::size_t ConnectivityGraph::distance(std::size_t a, std::size_t b) const {
  return shortest_path(a, b).size() - 1;
}

ConnectivityGraph coupling_map_from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("coupling edges must be [a, b] pairs");
    }
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return ConnectivityGraph(j.at("n").get<std::size_t>(), std::move(edges),
                           j.value("name", std::string{}));
}

nlohmann::json coupling_map_to_json(const ConnectivityGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : graph.edges()) edges.push_back({a, b});
  return {{"name", graph.name()}, {"n", graph.num_qubits()}, {"edges", edges}};
}

ConnectivityGraph load_coupling_map(const std::string& path) {
  try {
    return coupling_map_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

const ConnectivityGraph& johannesburg_graph() {
  static const ConnectivityGraph graph =
      coupling_map_from_json(nlohmann::json::parse(data::kJohannesburgJson));
  return graph;
}

namespace {

bool find_path(const ConnectivityGraph& graph, std::size_t length,
               std::vector<std::size_t>& path, std::vector<bool>& used) {
  if (path.size() == length) return true;
  for (std::size_t w : graph.neighbors(path.back())) {
    if (used[w]) continue;
    used[w] = true;
    path.push_back(w);
    if (find_path(graph, length, path, used)) return true;
    path.pop_back();
    used[w] = false;
  }
  return false;
}

// Logical qubits in path order, or nullopt when the interaction graph is
// not a union of simple paths.
std::optional<std::vector<std::size_t>> interaction_line(const Circuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Gate& g : circuit.gates()) {
    if (g.arity() != 2) continue;
    auto [a, b] = std::pair{g.qubits[0], g.qubits[1]};
    if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& a : adj) {
    if (a.size() > 2) return std::nullopt;
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component{start};
    std::vector<bool> in_component(n, false);
    in_component[start] = true;
    std::size_t degree_sum = 0;
    for (std::size_t i = 0; i < component.size(); ++i) {
      degree_sum += adj[component[i]].size();
      for (std::size_t w : adj[component[i]]) {
        if (!in_component[w]) {
          in_component[w] = true;
          component.push_back(w);
        }
      }
    }
    // A tree with maximum degree 2 is a path; anything else has a cycle.
    if (degree_sum / 2 + 1 != component.size()) return std::nullopt;
    std::size_t v = n;
    for (std::size_t c : component) {
      if (adj[c].size() <= 1 && c < v) v = c;
    }
    std::size_t prev = n;
    while (v != n) {
      seen[v] = true;
      order.push_back(v);
      std::size_t next = n;
      for (std::size_t w : adj[v]) {
        if (w != prev) next = w;
      }
      prev = v;
      v = next;
    }
  }
  return order;
}

}  // namespace

std::vector<std::size_t> line_subgraph_placement(const Circuit& circuit,
                                                 const ConnectivityGraph& graph) {
  const std::size_t n = circuit.num_qubits();
  if (n > graph.num_qubits()) {
    throw std::invalid_argument("circuit of " + std::to_string(n) +
                                " qubits does not fit a " +
                                std::to_string(graph.num_qubits()) +
                                "-qubit coupling graph");
  }
  std::vector<std::size_t> identity(n);
  for (std::size_t q = 0; q < n; ++q) identity[q] = q;
  const auto line = interaction_line(circuit);
  if (!line) return identity;
  for (std::size_t start = 0; start < graph.num_qubits(); ++start) {
    std::vector<std::size_t> path{start};
    std::vector<bool> used(graph.num_qubits(), false);
    used[start] = true;
    if (find_path(graph, n, path, used)) {
      std::vector<std::size_t> mapping(n);
      for (std::size_t i = 0; i < n; ++i) mapping[(*line)[i]] = path[i];
      return mapping;
    }
  }
  return identity;
}

RoutedCircuit route(const Circuit& circuit, const ConnectivityGraph& graph,
                    std::uint64_t /*seed*/, Placement placement,
                    const GateDurations& durations) {
  const std::size_t n = circuit.num_qubits();
  if (n > graph.num_qubits()) {
    throw std::invalid_argument("circuit of " + std::to_string(n) +
                                " qubits does not fit a " +
                                std::to_string(graph.num_qubits()) +
                                "-qubit coupling graph");
  }
  RoutedCircuit out{Circuit(graph.num_qubits(), circuit.label()), {}, {}, 0};
  if (placement == Placement::Line) {
    out.initial_mapping = line_subgraph_placement(circuit, graph);
  } else {
    out.initial_mapping.resize(n);
    for (std::size_t q = 0; q < n; ++q) out.initial_mapping[q] = q;
  }
  std::vector<std::size_t> where = out.initial_mapping;
  const std::size_t empty = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> holder(graph.num_qubits(), empty);
  for (std::size_t q = 0; q < n; ++q) holder[where[q]] = q;

  std::vector<Gate> measurements;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::MEASURE) {
      measurements.push_back(g);
      continue;
    }
    if (g.arity() == 2 && !graph.adjacent(where[g.qubits[0]], where[g.qubits[1]])) {
      const auto path = graph.shortest_path(where[g.qubits[0]], where[g.qubits[1]]);
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        out.circuit.add(Gate::swap(path[i], path[i + 1], durations));
        ++out.swap_count;
        std::swap(holder[path[i]], holder[path[i + 1]]);
        if (holder[path[i]] != empty) where[holder[path[i]]] = path[i];
        if (holder[path[i + 1]] != empty) where[holder[path[i + 1]]] = path[i + 1];
      }
    }
    Gate mapped = g;
    for (std::size_t& q : mapped.qubits) q = where[q];
    out.circuit.add(std::move(mapped));
  }
  // Measurements are terminal, so they can wait for the final placement.
  for (Gate g : measurements) {
    g.qubits[0] = where[g.qubits[0]];
    out.circuit.add(std::move(g));
  }
  out.final_mapping = where;
  return out;
}

CompactCircuit compact(const RoutedCircuit& routed) {
  const std::size_t physical = routed.circuit.num_qubits();
  std::vector<bool> used(physical, false);
  for (std::size_t p : routed.initial_mapping) used[p] = true;
  for (const Gate& g : routed.circuit.gates())
    for (std::size_t q : g.qubits) used[q] = true;
  std::vector<std::size_t> index(physical, 0);
  std::size_t k = 0;
  for (std::size_t p = 0; p < physical; ++p) {
    if (used[p]) index[p] = k++;
  }
  CompactCircuit out{Circuit(k, routed.circuit.label()), {}};
  for (Gate g : routed.circuit.gates()) {
    for (std::size_t& q : g.qubits) q = index[q];
    out.circuit.add(std::move(g));
  }
  for (std::size_t p : routed.final_mapping) out.logical_to_compact.push_back(index[p]);
  return out;
}

OutputDistribution to_logical_order(const OutputDistribution& compact_dist,
                                    const std::vector<std::size_t>& logical_to_compact) {
  const std::size_t n = logical_to_compact.size();
  const std::size_t k = compact_dist.num_bits;
  OutputDistribution out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (std::size_t i = 0; i < compact_dist.probs.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = (i >> (k - 1 - logical_to_compact[q])) & 1U;
      j |= bit << (n - 1 - q);
    }
    out.probs[j] += compact_dist.probs[i];
  }
  return out;
}

}  // namespace qdc
