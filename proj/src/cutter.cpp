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

#include "qdc/cutter.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qdc/density.hpp"
#include "qdc/parallel.hpp"

namespace qdc {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// A maximal piece of one wire between cuts.
struct Segment {
  std::size_t wire = 0;
  std::size_t component = 0;
  std::size_t cut_in = kNone;
  std::size_t cut_out = kNone;
  std::vector<std::size_t> gates;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

nlohmann::json cutspec_to_json(const CutSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (const CutEdge& e : spec.cut_edges) {
    out.push_back({{"source_gate_index", e.source_gate},
                   {"target_gate_index", e.target_gate},
                   {"qubit", e.qubit}});
  }
  return out;
}

CutSpec cutspec_from_json(const nlohmann::json& j) {
  CutSpec spec;
  for (const auto& e : j) {
    spec.cut_edges.push_back({e.at("source_gate_index").get<std::size_t>(),
                              e.at("target_gate_index").get<std::size_t>(),
                              e.at("qubit").get<std::size_t>()});
  }
  return spec;
}

std::vector<Fragment> cut(const CircuitDag& dag, const CutSpec& spec) {
  const std::size_t g = dag.num_gates();
  for (const Gate& gate : dag.gates()) {
    if (gate.is_pseudo()) {
      throw std::invalid_argument("cannot cut a circuit that already contains " +
                                  std::string(to_string(gate.kind)));
    }
  }
  if (spec.cut_edges.empty()) {
    throw std::invalid_argument("a cut needs at least one edge (K >= 2)");
  }
  std::vector<bool> is_cut(dag.edges().size(), false);
  std::vector<std::size_t> cut_of_edge(dag.edges().size(), kNone);
  for (std::size_t c = 0; c < spec.size(); ++c) {
    const CutEdge& e = spec.cut_edges[c];
    if (e.source_gate >= g || e.target_gate >= g) {
      throw std::invalid_argument("cut " + std::to_string(c) +
                                  " does not join two gates");
    }
    const std::ptrdiff_t id = dag.find_edge(e.source_gate, e.target_gate, e.qubit);
    if (id < 0) {
      throw std::invalid_argument(
          "cut " + std::to_string(c) + " (" + std::to_string(e.source_gate) +
          " -> " + std::to_string(e.target_gate) + " on qubit " +
          std::to_string(e.qubit) + ") is not a wire segment of the circuit");
    }
    if (is_cut[static_cast<std::size_t>(id)]) {
      throw std::invalid_argument("cut edge listed twice");
    }
    is_cut[static_cast<std::size_t>(id)] = true;
    cut_of_edge[static_cast<std::size_t>(id)] = c;
  }

  DisjointSets sets(dag.vertices().size());
  for (std::size_t e = 0; e < dag.edges().size(); ++e) {
    if (!is_cut[e]) sets.unite(dag.edges()[e].source, dag.edges()[e].target);
  }
  for (std::size_t c = 0; c < spec.size(); ++c) {
    const CutEdge& e = spec.cut_edges[c];
    if (sets.find(e.source_gate) == sets.find(e.target_gate)) {
      throw std::invalid_argument("cut " + std::to_string(c) +
                                  " does not disconnect the circuit");
    }
  }

  // Split every wire into segments.
  std::vector<Segment> segments;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> segment_of;  // (gate, wire)
  for (std::size_t q = 0; q < dag.num_qubits(); ++q) {
    Segment current{q, sets.find(dag.init_vertex(q)), kNone, kNone, {}};
    for (std::size_t e : dag.wire_edges(q)) {
      const DagEdge& edge = dag.edges()[e];
      if (is_cut[e]) {
        current.cut_out = cut_of_edge[e];
        segments.push_back(current);
        current = Segment{q, sets.find(edge.target), cut_of_edge[e], kNone, {}};
      }
      if (dag.vertices()[edge.target].type == VertexType::Gate) {
        segment_of[{edge.target, q}] = segments.size();
        current.gates.push_back(edge.target);
      }
    }
    segments.push_back(current);
  }

  std::map<std::size_t, std::vector<std::size_t>> by_component;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_component[segments[s].component].push_back(s);
  }
  if (by_component.size() < 2) {
    throw std::invalid_argument("cut does not split the circuit");
  }

  struct Piece {
    std::size_t first_wire;
    std::size_t first_gate;
    std::vector<std::size_t> segment_ids;
  };
  std::vector<Piece> pieces;
  for (auto& [component, ids] : by_component) {
    Piece p{kNone, kNone, ids};
    for (std::size_t s : ids) {
      p.first_wire = std::min(p.first_wire, segments[s].wire);
      if (!segments[s].gates.empty()) {
        p.first_gate = std::min(p.first_gate, segments[s].gates.front());
      }
    }
    pieces.push_back(std::move(p));
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return std::tie(a.first_wire, a.first_gate) < std::tie(b.first_wire, b.first_gate);
  });

  std::vector<Fragment> fragments;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    // Segment ids grow along each wire and wires are visited in order, so
    // the id order is already (wire, position).
    std::vector<std::size_t> ids = pieces[i].segment_ids;
    std::sort(ids.begin(), ids.end());
    std::map<std::size_t, std::size_t> local_of;
    Fragment f;
    f.index = i;
    for (std::size_t s : ids) {
      local_of[s] = f.local_wire.size();
      f.local_wire.push_back(segments[s].wire);
    }
    f.sub_circuit = Circuit(ids.size(), "fragment_" + std::to_string(i));
    std::vector<std::size_t> gate_ids;
    for (std::size_t s : ids) {
      gate_ids.insert(gate_ids.end(), segments[s].gates.begin(), segments[s].gates.end());
    }
    std::sort(gate_ids.begin(), gate_ids.end());
    gate_ids.erase(std::unique(gate_ids.begin(), gate_ids.end()), gate_ids.end());
    for (std::size_t gi : gate_ids) {
      Gate gate = dag.gates()[gi];
      for (std::size_t& q : gate.qubits) q = local_of.at(segment_of.at({gi, q}));
      f.sub_circuit.add(std::move(gate));
    }
    f.gate_indices = gate_ids;
    for (std::size_t s : ids) {
      const Segment& seg = segments[s];
      if (seg.cut_in != kNone) f.incoming_legs.push_back({seg.cut_in, local_of[s]});
      if (seg.cut_out != kNone) {
        f.outgoing_legs.push_back({seg.cut_out, local_of[s]});
      } else {
        f.final_qubits.push_back(seg.wire);
        f.final_local.push_back(local_of[s]);
      }
    }
    auto by_cut = [](const Leg& a, const Leg& b) { return a.cut < b.cut; };
    std::sort(f.incoming_legs.begin(), f.incoming_legs.end(), by_cut);
    std::sort(f.outgoing_legs.begin(), f.outgoing_legs.end(), by_cut);
    fragments.push_back(std::move(f));
  }
  return fragments;
}

Fragment whole_circuit_fragment(const Circuit& circuit) {
  for (const Gate& gate : circuit.gates()) {
    if (gate.is_pseudo()) {
      throw std::invalid_argument("fragment circuits must not contain " +
                                  std::string(to_string(gate.kind)));
    }
  }
  Fragment f;
  f.sub_circuit = circuit;
  for (std::size_t q = 0; q < circuit.num_qubits(); ++q) {
    f.final_qubits.push_back(q);
    f.final_local.push_back(q);
    f.local_wire.push_back(q);
  }
  f.gate_indices.resize(circuit.gates().size());
  std::iota(f.gate_indices.begin(), f.gate_indices.end(), 0);
  return f;
}

std::vector<std::size_t> balanced_block_sizes(std::size_t m, std::size_t k) {
  if (k == 0 || k > m) {
    throw std::invalid_argument("fragment count " + std::to_string(k) +
                                " outside 1.." + std::to_string(m));
  }
  std::vector<std::size_t> sizes(k, m / k);
  for (std::size_t i = 0; i < m % k; ++i) ++sizes[i];
  return sizes;
}

CutSpec balanced_ghz_cutspec(std::size_t m, std::size_t k) {
  if (k < 2 || k > m) {
    throw std::invalid_argument("fragment count " + std::to_string(k) +
                                " outside 2.." + std::to_string(m));
  }
  const CircuitDag dag(build_ghz_ladder(m));
  CutSpec spec;
  std::size_t first = 0;
  for (std::size_t size : balanced_block_sizes(m, k)) {
    if (first > 0) {
      // Cut the wire of `first` right after CNOT(first - 1, first).
      const std::size_t cnot = ghz_ladder_cnot_index(first - 1);
      const auto path = dag.wire_path(first);
      const auto it = std::find(path.begin(), path.end(), dag.gate_vertex(cnot));
      spec.cut_edges.push_back({cnot, *(it + 1), first});
    }
    first += size;
  }
  return spec;
}

std::string_view to_string(CutBackend backend) {
  return backend == CutBackend::Bell ? "bell" : "eigenstate";
}

CutBackend cut_backend_from_string(std::string_view name) {
  if (name == "bell") return CutBackend::Bell;
  if (name == "eigenstate") return CutBackend::Eigenstate;
  throw std::invalid_argument("unknown cut backend '" + std::string(name) + "'");
}

std::size_t variant_count(const Fragment& f, CutBackend backend) {
  const std::size_t legs = f.num_incoming() + f.num_outgoing();
  const std::size_t base = ipow(3, legs);
  return backend == CutBackend::Bell ? base : base * ipow(2, f.num_incoming());
}

std::vector<FragmentVariant> generate_variants(const Fragment& f, CutBackend backend,
                                               const GateDurations& durations) {
  const std::size_t n = f.num_incoming(), m = f.num_outgoing();
  const std::size_t local = f.sub_circuit.num_qubits();
  const std::size_t bit_settings = backend == CutBackend::Bell ? 1 : ipow(2, n);
  std::vector<FragmentVariant> out;
  out.reserve(variant_count(f, backend));
  for (std::size_t a = 0; a < ipow(3, n + m); ++a) {
    std::vector<PauliAxis> axes(n + m);
    for (std::size_t l = n + m, rest = a; l-- > 0; rest /= 3) {
      axes[l] = static_cast<PauliAxis>(rest % 3);
    }
    for (std::size_t bits = 0; bits < bit_settings; ++bits) {
      FragmentVariant v;
      v.fragment_index = f.index;
      v.axes_in.assign(axes.begin(), axes.begin() + static_cast<std::ptrdiff_t>(n));
      v.axes_out.assign(axes.begin() + static_cast<std::ptrdiff_t>(n), axes.end());
      const std::size_t width = backend == CutBackend::Bell ? local + n : local;
      Circuit c(width, f.sub_circuit.label());
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t q = f.incoming_legs[l].local_qubit;
        if (backend == CutBackend::Bell) {
          const std::size_t ancilla = local + l;
          c.add(Gate::h(ancilla, durations));
          c.add(Gate::cnot(ancilla, q, durations));
        } else {
          const int b = static_cast<int>((bits >> (n - 1 - l)) & 1U);
          v.prep_bits.push_back(b);
          c.add(Gate::prep(q, v.axes_in[l], b));
        }
      }
      for (const Gate& g : f.sub_circuit.gates()) c.add(g);
      std::vector<PauliAxis> measure_axis(width, PauliAxis::Z);
      for (std::size_t l = 0; l < m; ++l) {
        measure_axis[f.outgoing_legs[l].local_qubit] = v.axes_out[l];
      }
      if (backend == CutBackend::Bell) {
        for (std::size_t l = 0; l < n; ++l) measure_axis[local + l] = v.axes_in[l];
      }
      for (std::size_t q = 0; q < width; ++q) c.add(Gate::measure(q, measure_axis[q]));
      v.circuit = std::move(c);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::size_t FragmentDistribution::num_axis_settings() const {
  return ipow(3, in_cuts.size() + out_cuts.size());
}

std::size_t FragmentDistribution::slice_size() const {
  return ipow(2, in_cuts.size() + final_qubits.size() + out_cuts.size());
}

std::size_t FragmentDistribution::axis_offset(std::span<const PauliAxis> axes) const {
  if (axes.size() != in_cuts.size() + out_cuts.size()) {
    throw std::invalid_argument("axis setting has the wrong length");
  }
  std::size_t setting = 0;
  for (PauliAxis a : axes) setting = setting * 3 + static_cast<std::size_t>(a);
  return setting * slice_size();
}

double FragmentDistribution::slice_total(std::size_t setting) const {
  double s = 0.0;
  for (std::size_t i = 0; i < slice_size(); ++i) s += values.at(setting * slice_size() + i);
  return s;
}

double FragmentDistribution::normalization_error() const {
  const double expected =
      backend == CutBackend::Bell ? 1.0 : static_cast<double>(ipow(2, in_cuts.size()));
  double worst = 0.0;
  for (std::size_t s = 0; s < num_axis_settings(); ++s) {
    worst = std::max(worst, std::abs(slice_total(s) - expected));
  }
  return worst;
}

nlohmann::json fragment_distribution_to_json(const FragmentDistribution& d) {
  return {{"fragment_index", d.fragment_index},
          {"backend", to_string(d.backend)},
          {"in_cuts", d.in_cuts},
          {"out_cuts", d.out_cuts},
          {"final_qubits", d.final_qubits},
          {"layout", {"axes_in", "axes_out", "b", "s", "b_prime"}},
          {"values", d.values}};
}

FragmentDistribution fragment_distribution_from_json(const nlohmann::json& j) {
  FragmentDistribution d;
  d.fragment_index = j.at("fragment_index").get<std::size_t>();
  d.backend = cut_backend_from_string(j.at("backend").get<std::string>());
  d.in_cuts = j.at("in_cuts").get<std::vector<std::size_t>>();
  d.out_cuts = j.at("out_cuts").get<std::vector<std::size_t>>();
  d.final_qubits = j.at("final_qubits").get<std::vector<std::size_t>>();
  d.values = j.at("values").get<std::vector<double>>();
  if (d.values.size() != d.num_axis_settings() * d.slice_size()) {
    throw std::invalid_argument("fragment distribution has " +
                                std::to_string(d.values.size()) + " values, expected " +
                                std::to_string(d.num_axis_settings() * d.slice_size()));
  }
  return d;
}

OutputDistribution run_variant(const Circuit& circuit, const CollectOptions& options,
                               std::uint64_t stream, std::size_t* swap_count) {
  OutputDistribution dist;
  std::optional<ReadoutPovm> readout;
  if (options.noise) readout = ReadoutPovm::from_model(*options.noise);
  if (options.routing) {
    const GateDurations durations =
        options.noise ? options.noise->gate_durations : GateDurations{};
    const RoutedCircuit routed =
        route(circuit, *options.routing, options.seed, options.placement, durations);
    if (swap_count) *swap_count = routed.swap_count;
    const CompactCircuit small = compact(routed);
    dist = to_logical_order(
        measure_distribution(simulate(small.circuit, options.noise), readout),
        small.logical_to_compact);
  } else {
    if (swap_count) *swap_count = 0;
    dist = measure_distribution(simulate(circuit, options.noise), readout);
  }
  if (options.shots) {
    const std::uint64_t seed = splitmix64(options.seed ^ splitmix64(stream));
    dist = counts_to_distribution(sample_counts(dist, *options.shots, seed),
                                  dist.num_bits);
  }
  return dist;
}

FragmentDistribution collect_distributions(const Fragment& f,
                                           const std::vector<FragmentVariant>& variants,
                                           CutBackend backend,
                                           const CollectOptions& options,
                                           CollectStats* stats) {
  if (variants.size() != variant_count(f, backend)) {
    throw std::invalid_argument("fragment " + std::to_string(f.index) + " expects " +
                                std::to_string(variant_count(f, backend)) +
                                " variants, got " + std::to_string(variants.size()));
  }
  const std::size_t n = f.num_incoming(), m = f.num_outgoing(), p = f.num_final();
  const std::size_t local = f.sub_circuit.num_qubits();
  FragmentDistribution d;
  d.fragment_index = f.index;
  d.backend = backend;
  for (const Leg& l : f.incoming_legs) d.in_cuts.push_back(l.cut);
  for (const Leg& l : f.outgoing_legs) d.out_cuts.push_back(l.cut);
  d.final_qubits = f.final_qubits;
  d.values.assign(d.num_axis_settings() * d.slice_size(), 0.0);

  for (const FragmentVariant& v : variants) {
    const std::size_t width =
        backend == CutBackend::Bell ? local + n : local;
    if (v.fragment_index != f.index || v.axes_in.size() != n ||
        v.axes_out.size() != m || v.circuit.num_qubits() != width ||
        (backend == CutBackend::Eigenstate && v.prep_bits.size() != n)) {
      throw std::invalid_argument("variant does not belong to fragment " +
                                  std::to_string(f.index));
    }
  }

  std::vector<OutputDistribution> results(variants.size());
  std::vector<std::size_t> swaps(variants.size(), 0);
  parallel_for(variants.size(), options.workers, [&](std::size_t i) {
    results[i] = run_variant(variants[i].circuit, options,
                             (static_cast<std::uint64_t>(f.index) << 32) | i, &swaps[i]);
  });

  // Qubit feeding each bit of the (b, s, b') group, most significant first.
  std::vector<std::size_t> b_qubits, tail_qubits;
  for (std::size_t l = 0; l < n; ++l) b_qubits.push_back(local + l);
  for (std::size_t q : f.final_local) tail_qubits.push_back(q);
  for (const Leg& l : f.outgoing_legs) tail_qubits.push_back(l.local_qubit);
  const std::size_t tail_bits = p + m;

  for (std::size_t i = 0; i < variants.size(); ++i) {
    const FragmentVariant& v = variants[i];
    std::vector<PauliAxis> axes = v.axes_in;
    axes.insert(axes.end(), v.axes_out.begin(), v.axes_out.end());
    const std::size_t base = d.axis_offset(axes);
    const OutputDistribution& dist = results[i];
    const std::size_t w = dist.num_bits;
    for (std::size_t x = 0; x < dist.probs.size(); ++x) {
      std::size_t b = 0, tail = 0;
      if (backend == CutBackend::Bell) {
        for (std::size_t q : b_qubits) b = (b << 1) | ((x >> (w - 1 - q)) & 1U);
      } else {
        for (int bit : v.prep_bits) b = (b << 1) | static_cast<std::size_t>(bit);
      }
      for (std::size_t q : tail_qubits) tail = (tail << 1) | ((x >> (w - 1 - q)) & 1U);
      d.values[base + (b << tail_bits) + tail] += dist.probs[x];
    }
  }
  if (stats) {
    stats->circuits = variants.size();
    stats->swap_count = *std::max_element(swaps.begin(), swaps.end());
  }
  return d;
}

}  // namespace qdc
