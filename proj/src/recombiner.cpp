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

#include "qdc/recombiner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "qdc/pauli.hpp"

namespace qdc {
namespace {

struct Shape {
  std::vector<int> labels;
  std::vector<std::size_t> dims;

  bool has(int l) const {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  }
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (std::size_t d : dims) s *= d;
    return s;
  }
};

Shape shape_of(const Tensor& t) { return {t.labels, t.dims}; }

// Labels of a and b that must survive their contraction.
std::vector<int> surviving_labels(const std::map<std::size_t, Shape>& live,
                                  std::size_t a, std::size_t b,
                                  const std::vector<int>& external) {
  std::vector<int> keep;
  for (const Shape* s : {&live.at(a), &live.at(b)}) {
    for (int l : s->labels) {
      if (std::find(keep.begin(), keep.end(), l) != keep.end()) continue;
      bool needed = std::find(external.begin(), external.end(), l) != external.end();
      for (const auto& [id, other] : live) {
        if (id != a && id != b && other.has(l)) needed = true;
      }
      if (needed) keep.push_back(l);
    }
  }
  return keep;
}

std::pair<Shape, std::uint64_t> contracted_shape(const Shape& a, const Shape& b,
                                                 const std::vector<int>& keep) {
  Shape joint = a;
  for (std::size_t i = 0; i < b.labels.size(); ++i) {
    if (!joint.has(b.labels[i])) {
      joint.labels.push_back(b.labels[i]);
      joint.dims.push_back(b.dims[i]);
    }
  }
  Shape out;
  for (std::size_t i = 0; i < joint.labels.size(); ++i) {
    const int l = joint.labels[i];
    const bool shared = a.has(l) && b.has(l);
    if (!shared || std::find(keep.begin(), keep.end(), l) != keep.end()) {
      out.labels.push_back(l);
      out.dims.push_back(joint.dims[i]);
    }
  }
  return {out, joint.size()};
}

bool shares_label(const Shape& a, const Shape& b) {
  for (int l : a.labels)
    if (b.has(l)) return true;
  return false;
}

std::map<std::size_t, Shape> initial_shapes(const RecombinationNetwork& network) {
  std::map<std::size_t, Shape> live;
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    live[i] = shape_of(network.nodes[i].tensor);
  }
  return live;
}

void add_step(ContractionPlan& plan, std::map<std::size_t, Shape>& live,
              std::size_t& next_id, std::size_t a, std::size_t b,
              const std::vector<int>& external) {
  const auto keep = surviving_labels(live, a, b, external);
  auto [shape, cost] = contracted_shape(live.at(a), live.at(b), keep);
  plan.steps.push_back({a, b, next_id, cost});
  plan.total_cost += cost;
  live.erase(a);
  live.erase(b);
  live[next_id++] = std::move(shape);
}

}  // namespace

bool RecombinationNetwork::is_path() const {
  const std::size_t n = nodes.size();
  if (n == 1) return true;
  if (edges.size() + 1 != n) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& a : adj) {
    if (a.empty() || a.size() > 2) return false;
  }
  // A tree (n - 1 edges, connected) with degrees <= 2 is a path.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

Tensor fragment_tensor(const FragmentDistribution& d) {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
  for (std::size_t c : d.in_cuts) labels.push_back(alpha_label(c)), dims.push_back(3);
  for (std::size_t c : d.out_cuts) labels.push_back(alpha_label(c)), dims.push_back(3);
  for (std::size_t c : d.in_cuts) labels.push_back(b_label(c)), dims.push_back(2);
  for (std::size_t q : d.final_qubits) labels.push_back(s_label(q)), dims.push_back(2);
  for (std::size_t c : d.out_cuts) labels.push_back(b_prime_label(c)), dims.push_back(2);
  Tensor t(labels, dims);
  if (t.size() != d.values.size()) {
    throw std::invalid_argument("fragment distribution size does not match its legs");
  }
  t.data = d.values;
  return t;
}

Tensor connecting_tensor(std::size_t cut, CutBackend backend) {
  const GammaTensor gamma =
      backend == CutBackend::Bell ? GammaTensor::bell() : GammaTensor::tilde();
  const double scale = backend == CutBackend::Bell ? 1.0 : 0.5;
  Tensor t({alpha_label(cut), b_label(cut), b_prime_label(cut)}, {3, 2, 2});
  for (PauliAxis a : kAllAxes)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        const std::size_t idx[] = {static_cast<std::size_t>(a),
                                   static_cast<std::size_t>(b),
                                   static_cast<std::size_t>(bp)};
        t.at(idx) = scale * gamma(a, b, bp);
      }
  return t;
}

RecombinationNetwork build_network(const std::vector<FragmentDistribution>& fragments) {
  if (fragments.empty()) throw std::invalid_argument("no fragments to recombine");
  RecombinationNetwork net;
  net.backend = fragments.front().backend;
  net.num_fragments = fragments.size();
  std::map<std::size_t, std::size_t> producer, consumer;
  std::map<std::size_t, std::size_t> qubit_owner;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const FragmentDistribution& d = fragments[i];
    if (d.backend != net.backend) {
      throw std::invalid_argument("fragments come from different cut backends");
    }
    for (std::size_t c : d.out_cuts) {
      if (!producer.emplace(c, i).second) {
        throw std::invalid_argument("cut " + std::to_string(c) + " is measured twice");
      }
    }
    for (std::size_t c : d.in_cuts) {
      if (!consumer.emplace(c, i).second) {
        throw std::invalid_argument("cut " + std::to_string(c) + " is fed twice");
      }
    }
    for (std::size_t q : d.final_qubits) {
      if (!qubit_owner.emplace(q, i).second) {
        throw std::invalid_argument("qubit " + std::to_string(q) +
                                    " is produced by two fragments");
      }
    }
    net.nodes.push_back({NetworkNode::Kind::Fragment, i, fragment_tensor(d)});
  }
  if (producer.size() != consumer.size()) {
    throw std::invalid_argument("leg count mismatch: " + std::to_string(producer.size()) +
                                " outgoing vs " + std::to_string(consumer.size()) +
                                " incoming");
  }
  net.num_cuts = producer.size();
  for (std::size_t c = 0; c < net.num_cuts; ++c) {
    if (!producer.count(c) || !consumer.count(c)) {
      throw std::invalid_argument("cut " + std::to_string(c) + " has a dangling leg");
    }
    const std::size_t node = net.nodes.size();
    net.nodes.push_back({NetworkNode::Kind::Gamma, c, connecting_tensor(c, net.backend)});
    net.edges.emplace_back(producer[c], node);
    net.edges.emplace_back(consumer[c], node);
  }
  for (std::size_t q = 0; q < qubit_owner.size(); ++q) {
    if (!qubit_owner.count(q)) {
      throw std::invalid_argument("no fragment produces qubit " + std::to_string(q));
    }
    net.external_labels.push_back(s_label(q));
  }
  return net;
}

RecombinationNetwork fix_output(const RecombinationNetwork& network,
                                const std::string& bits) {
  if (bits.size() != network.num_qubits()) {
    throw std::invalid_argument("bitstring of length " + std::to_string(bits.size()) +
                                " for a " + std::to_string(network.num_qubits()) +
                                "-qubit network");
  }
  RecombinationNetwork out = network;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != '0' && bits[q] != '1') {
      throw std::invalid_argument("bitstring must be 0/1");
    }
    const int l = s_label(q);
    for (NetworkNode& node : out.nodes) {
      if (node.tensor.has(l)) {
        node.tensor = slice(node.tensor, l, static_cast<std::size_t>(bits[q] - '0'));
      }
    }
  }
  out.external_labels.clear();
  return out;
}

ContractionPlan sequential_chain_plan(const RecombinationNetwork& network) {
  if (!network.is_path()) {
    throw std::invalid_argument("sequential contraction needs a path-shaped network");
  }
  ContractionPlan plan;
  const std::size_t n = network.nodes.size();
  if (n == 1) return plan;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : network.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::size_t start = n;
  for (std::size_t v = 0; v < n && start == n; ++v) {
    if (adj[v].size() == 1) start = v;
  }
  std::vector<std::size_t> order{start};
  std::size_t prev = n;
  while (order.size() < n) {
    const std::size_t v = order.back();
    const std::size_t w = adj[v][0] != prev ? adj[v][0] : adj[v][1];
    prev = v;
    order.push_back(w);
  }
  auto live = initial_shapes(network);
  std::size_t next_id = n;
  std::size_t acc = order[0];
  for (std::size_t i = 1; i < n; ++i) {
    add_step(plan, live, next_id, acc, order[i], network.external_labels);
    acc = next_id - 1;
  }
  return plan;
}

ContractionPlan general_contraction_plan(const RecombinationNetwork& network) {
  ContractionPlan plan;
  auto live = initial_shapes(network);
  std::size_t next_id = network.nodes.size();
  while (live.size() > 1) {
    std::optional<std::tuple<std::uint64_t, std::uint64_t, std::size_t, std::size_t>> best;
    // Outer products only once no two live nodes share an index.
    for (bool need_shared : {true, false}) {
      for (auto ia = live.begin(); ia != live.end(); ++ia) {
        for (auto ib = std::next(ia); ib != live.end(); ++ib) {
          if (need_shared && !shares_label(ia->second, ib->second)) continue;
          const auto keep =
              surviving_labels(live, ia->first, ib->first, network.external_labels);
          const auto [shape, cost] = contracted_shape(ia->second, ib->second, keep);
          const auto candidate = std::tuple{cost, shape.size(), ia->first, ib->first};
          if (!best || candidate < *best) best = candidate;
        }
      }
      if (best) break;
    }
    add_step(plan, live, next_id, std::get<2>(*best), std::get<3>(*best),
             network.external_labels);
  }
  return plan;
}

std::uint64_t naive_contraction_cost(const RecombinationNetwork& network) {
  std::uint64_t cost = 1;
  for (std::size_t c = 0; c < network.num_cuts; ++c) cost *= 12;
  return cost;
}

Tensor execute_plan(const RecombinationNetwork& network, const ContractionPlan& plan,
                    std::vector<std::uint64_t>* executed) {
  std::map<std::size_t, Tensor> live;
  std::map<std::size_t, Shape> shapes;
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    live[i] = network.nodes[i].tensor;
    shapes[i] = shape_of(live[i]);
  }
  for (const ContractionStep& step : plan.steps) {
    if (!live.count(step.left) || !live.count(step.right) || step.left == step.right) {
      throw std::invalid_argument("contraction plan uses a node that is not live");
    }
    const auto keep =
        surviving_labels(shapes, step.left, step.right, network.external_labels);
    std::uint64_t count = 0;
    Tensor t = contract(live.at(step.left), live.at(step.right), keep, &count);
    if (executed) executed->push_back(count);
    live.erase(step.left);
    live.erase(step.right);
    shapes.erase(step.left);
    shapes.erase(step.right);
    shapes[step.result] = shape_of(t);
    live[step.result] = std::move(t);
  }
  if (live.size() != 1) {
    throw std::invalid_argument("contraction plan leaves " + std::to_string(live.size()) +
                                " nodes");
  }
  return std::move(live.begin()->second);
}

double reconstruct_bitstring(const RecombinationNetwork& network, const std::string& bits) {
  const RecombinationNetwork fixed = fix_output(network, bits);
  const Tensor t = execute_plan(fixed, general_contraction_plan(fixed));
  if (t.rank() != 0) throw std::logic_error("contraction left open indices");
  return t.data[0];
}

OutputDistribution reconstruct_full(const RecombinationNetwork& network,
                                    bool clip) {
  if (network.num_qubits() > kMaxReconstructedQubits) {
    throw std::invalid_argument("cannot reconstruct " +
                                std::to_string(network.num_qubits()) +
                                " qubits; the limit is " +
                                std::to_string(kMaxReconstructedQubits));
  }
  const Tensor t =
      permute(execute_plan(network, general_contraction_plan(network)),
              network.external_labels);
  OutputDistribution out{network.num_qubits(), t.data};
  return clip ? clip_and_renormalize(out) : out;
}

OutputDistribution clip_and_renormalize(const OutputDistribution& dist) {
  OutputDistribution out = dist;
  double total = 0.0;
  for (double& p : out.probs) {
    p = std::max(0.0, p);
    total += p;
  }
  if (total <= 0.0) throw std::runtime_error("distribution has no positive mass");
  for (double& p : out.probs) p /= total;
  return out;
}

nlohmann::json plan_to_json(const RecombinationNetwork& network,
                            const ContractionPlan& plan) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    const NetworkNode& n = network.nodes[i];
    nodes.push_back({{"id", i},
                     {"kind", n.kind == NetworkNode::Kind::Fragment ? "fragment" : "gamma"},
                     {"index", n.index},
                     {"labels", n.tensor.labels},
                     {"dims", n.tensor.dims}});
  }
  nlohmann::json steps = nlohmann::json::array();
  for (const ContractionStep& s : plan.steps) {
    steps.push_back(
        {{"left", s.left}, {"right", s.right}, {"result", s.result}, {"cost", s.cost}});
  }
  return {{"backend", to_string(network.backend)},
          {"num_fragments", network.num_fragments},
          {"num_cuts", network.num_cuts},
          {"nodes", nodes},
          {"edges", network.edges},
          {"steps", steps},
          {"total_cost", plan.total_cost},
          {"naive_cost", naive_contraction_cost(network)}};
}

}  // namespace qdc
