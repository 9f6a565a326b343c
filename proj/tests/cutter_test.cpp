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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles/fragment.hpp"
#include "qdc/cutter.hpp"

namespace qdc {
namespace {

// GHZ(4) cut on wire 1 between CNOT(0,1) and CNOT(1,2).
CutSpec ghz4_one_cut() { return CutSpec{{CutEdge{1, 2, 1}}}; }

// Components of the gate graph with the cut wire segments removed, by a
// plain search over gate indices.
std::size_t count_pieces(const Circuit& c, const CutSpec& spec) {
  const std::size_t g = c.gates().size();
  std::vector<std::vector<std::size_t>> adj(g);
  std::vector<std::ptrdiff_t> last(c.num_qubits(), -1);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t q : c.gates()[i].qubits) {
      if (last[q] >= 0) {
        const auto prev = static_cast<std::size_t>(last[q]);
        bool removed = false;
        for (const CutEdge& e : spec.cut_edges)
          removed |= e.source_gate == prev && e.target_gate == i && e.qubit == q;
        if (!removed) {
          adj[prev].push_back(i);
          adj[i].push_back(prev);
        }
      }
      last[q] = static_cast<std::ptrdiff_t>(i);
    }
  }
  std::vector<bool> seen(g, false);
  std::size_t pieces = 0;
  for (std::size_t s = 0; s < g; ++s) {
    if (seen[s]) continue;
    ++pieces;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v])
        if (!seen[w]) seen[w] = stack.emplace_back(w), true;
    }
  }
  return pieces;
}

TEST(Cut, GhzFourOneCut) {
  const Circuit c = build_ghz_circuit(4);
  const auto frags = cut(to_dag(c), ghz4_one_cut());
  ASSERT_EQ(frags.size(), 2u);
  const Fragment& a = frags[0];
  const Fragment& b = frags[1];
  EXPECT_EQ(a.sub_circuit.num_qubits(), 2u);
  EXPECT_EQ(a.num_incoming(), 0u);
  EXPECT_EQ(a.num_outgoing(), 1u);
  EXPECT_EQ(a.final_qubits, (std::vector<std::size_t>{0}));
  EXPECT_EQ(a.gate_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(b.sub_circuit.num_qubits(), 3u);
  EXPECT_EQ(b.num_incoming(), 1u);
  EXPECT_EQ(b.num_outgoing(), 0u);
  EXPECT_EQ(b.final_qubits, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(b.local_wire, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Cut, GatesArePartitioned) {
  for (std::size_t m = 2; m <= 10; ++m) {
    const Circuit c = build_ghz_ladder(m);
    for (std::size_t k = 2; k <= std::min<std::size_t>(m, 4); ++k) {
      const CutSpec spec = balanced_ghz_cutspec(m, k);
      EXPECT_EQ(spec.size(), k - 1);
      const auto frags = cut(to_dag(c), spec);
      ASSERT_EQ(frags.size(), k);
      EXPECT_EQ(count_pieces(c, spec), k);
      std::vector<int> owner(c.gates().size(), 0);
      std::size_t ins = 0, outs = 0;
      std::set<std::size_t> finals;
      for (const Fragment& f : frags) {
        for (std::size_t gi : f.gate_indices) ++owner[gi];
        ins += f.num_incoming();
        outs += f.num_outgoing();
        finals.insert(f.final_qubits.begin(), f.final_qubits.end());
        EXPECT_EQ(f.sub_circuit.gates().size(), f.gate_indices.size());
      }
      for (int o : owner) EXPECT_EQ(o, 1);
      EXPECT_EQ(ins, k - 1);
      EXPECT_EQ(outs, k - 1);
      EXPECT_EQ(finals.size(), m);
      const auto sizes = balanced_block_sizes(m, k);
      for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(frags[j].num_final(), sizes[j]);
    }
  }
}

TEST(Cut, BalancedBlocks) {
  EXPECT_EQ(balanced_block_sizes(6, 3), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(balanced_block_sizes(5, 2), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(balanced_block_sizes(10, 4), (std::vector<std::size_t>{3, 3, 2, 2}));
  EXPECT_THROW(balanced_ghz_cutspec(4, 5), std::invalid_argument);
  EXPECT_THROW(balanced_ghz_cutspec(4, 1), std::invalid_argument);
}

TEST(Cut, RejectsInvalidSpecs) {
  const Circuit c = build_ghz_circuit(4);
  const CircuitDag dag(c);
  EXPECT_THROW(cut(dag, CutSpec{}), std::invalid_argument);
  // Not an edge of the DAG.
  EXPECT_THROW(cut(dag, CutSpec{{CutEdge{0, 3, 0}}}), std::invalid_argument);
  EXPECT_THROW(cut(dag, CutSpec{{CutEdge{1, 2, 0}}}), std::invalid_argument);
  // Same edge twice.
  EXPECT_THROW(cut(dag, CutSpec{{CutEdge{1, 2, 1}, CutEdge{1, 2, 1}}}),
               std::invalid_argument);
  // Endpoints still joined through wire 0.
  Circuit loop(2);
  loop.add(Gate::cnot(0, 1)).add(Gate::h(1)).add(Gate::cnot(0, 1));
  EXPECT_THROW(cut(to_dag(loop), CutSpec{{CutEdge{0, 1, 1}}}), std::invalid_argument);
  Circuit prepared(2);
  prepared.add(Gate::prep(0, PauliAxis::X, 0)).add(Gate::cnot(0, 1)).add(Gate::h(1));
  EXPECT_THROW(cut(to_dag(prepared), CutSpec{{CutEdge{1, 2, 1}}}), std::invalid_argument);
}

TEST(Cut, SpecJsonRoundTrip) {
  const CutSpec spec = balanced_ghz_cutspec(10, 4);
  const nlohmann::json j = cutspec_to_json(spec);
  ASSERT_TRUE(j.is_array());
  EXPECT_TRUE(j[0].contains("source_gate_index"));
  EXPECT_EQ(cutspec_from_json(j).cut_edges, spec.cut_edges);
}

TEST(Variants, Counts) {
  const Circuit c = build_ghz_ladder(9);
  const auto frags = cut(to_dag(c), balanced_ghz_cutspec(9, 3));
  const std::size_t expected_bell[] = {3, 9, 3};
  const std::size_t expected_eig[] = {3, 18, 6};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto bell = generate_variants(frags[i], CutBackend::Bell);
    EXPECT_EQ(bell.size(), expected_bell[i]);
    EXPECT_EQ(variant_count(frags[i], CutBackend::Bell), expected_bell[i]);
    EXPECT_EQ(generate_variants(frags[i], CutBackend::Eigenstate).size(), expected_eig[i]);
    for (const auto& v : bell) {
      EXPECT_EQ(v.circuit.num_qubits(),
                frags[i].sub_circuit.num_qubits() + frags[i].num_incoming());
      std::vector<int> measured(v.circuit.num_qubits(), 0);
      for (const Gate& g : v.circuit.gates())
        if (g.kind == GateKind::MEASURE) ++measured[g.qubits[0]];
      for (int k : measured) EXPECT_EQ(k, 1);
    }
  }
}

class FragmentTensor : public ::testing::TestWithParam<CutBackend> {};

TEST_P(FragmentTensor, MatchesStatevectorOracle) {
  const CutBackend backend = GetParam();
  for (std::size_t m : {4u, 7u, 10u}) {
    const Circuit c = build_ghz_ladder(m);
    for (std::size_t k = 2; k <= 4; ++k) {
      for (const Fragment& f : cut(to_dag(c), balanced_ghz_cutspec(m, k))) {
        const FragmentDistribution d =
            collect_distributions(f, generate_variants(f, backend), backend);
        const auto expected = oracle::fragment_tensor_values(f, backend);
        ASSERT_EQ(d.values.size(), expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
          EXPECT_NEAR(d.values[i], expected[i], 1e-12) << "m=" << m << " k=" << k;
        EXPECT_LT(d.normalization_error(), 1e-12);
      }
    }
  }
}

TEST_P(FragmentTensor, RandomCircuits) {
  const CutBackend backend = GetParam();
  std::mt19937_64 rng(21);
  std::size_t checked = 0;
  for (int trial = 0; trial < 40 && checked < 12; ++trial) {
    Circuit c(4);
    std::uniform_int_distribution<std::size_t> pick(0, 3);
    for (int i = 0; i < 8; ++i) {
      const std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      while (b == a) b = pick(rng);
      c.add(Gate::h(a));
      c.add(i % 3 == 0 ? Gate::s_dag(b) : Gate::x(b));
      c.add(Gate::cnot(a, b));
    }
    // Cut one random wire segment between two CNOTs; skip when it does not
    // split the circuit.
    const CircuitDag dag(c);
    std::vector<CutEdge> candidates;
    for (const DagEdge& e : dag.edges()) {
      if (dag.vertices()[e.source].type == VertexType::Gate &&
          dag.vertices()[e.target].type == VertexType::Gate)
        candidates.push_back({e.source, e.target, e.qubit});
    }
    const CutSpec spec{{candidates[rng() % candidates.size()]}};
    if (count_pieces(c, spec) < 2) continue;
    ++checked;
    for (const Fragment& f : cut(dag, spec)) {
      const auto d = collect_distributions(f, generate_variants(f, backend), backend);
      const auto expected = oracle::fragment_tensor_values(f, backend);
      for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_NEAR(d.values[i], expected[i], 1e-12);
    }
  }
  EXPECT_GT(checked, 0u);
}

INSTANTIATE_TEST_SUITE_P(Backends, FragmentTensor,
                         ::testing::Values(CutBackend::Bell, CutBackend::Eigenstate),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(FragmentTensor, BellIsHalfEigenstateWithYFlip) {
  const Circuit c = build_ghz_ladder(6);
  const auto frags = cut(to_dag(c), balanced_ghz_cutspec(6, 2));
  const Fragment& f = frags[1];
  const auto bell = collect_distributions(f, generate_variants(f), CutBackend::Bell);
  const auto eig = collect_distributions(f, generate_variants(f, CutBackend::Eigenstate),
                                         CutBackend::Eigenstate);
  const std::size_t tail = std::size_t{1} << f.num_final();
  for (PauliAxis a : kAllAxes) {
    const PauliAxis axes[] = {a};
    const std::size_t base = bell.axis_offset(axes);
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t s = 0; s < tail; ++s) {
        const std::size_t flipped = a == PauliAxis::Y ? 1 - b : b;
        EXPECT_NEAR(bell.values[base + b * tail + s],
                    0.5 * eig.values[base + flipped * tail + s], 1e-12);
      }
  }
}

TEST(FragmentTensor, NoisySlicesStayNormalized) {
  const Circuit c = retime(build_ghz_ladder(6), johannesburg_default().gate_durations);
  CollectOptions opts;
  opts.noise = johannesburg_default();
  for (CutBackend backend : {CutBackend::Bell, CutBackend::Eigenstate}) {
    for (const Fragment& f : cut(to_dag(c), balanced_ghz_cutspec(6, 3))) {
      const auto d = collect_distributions(
          f, generate_variants(f, backend, opts.noise->gate_durations), backend, opts);
      EXPECT_LT(d.normalization_error(), 1e-10);
      for (double v : d.values) EXPECT_GE(v, -1e-15);
    }
  }
}

TEST(FragmentTensor, SampledCountsAreDeterministic) {
  const Circuit c = build_ghz_ladder(4);
  const auto frags = cut(to_dag(c), ghz4_one_cut());
  CollectOptions opts;
  opts.shots = 500;
  opts.seed = 9;
  const auto v = generate_variants(frags[1]);
  const auto a = collect_distributions(frags[1], v, CutBackend::Bell, opts);
  opts.workers = 1;
  const auto b = collect_distributions(frags[1], v, CutBackend::Bell, opts);
  EXPECT_EQ(a.values, b.values);
  for (std::size_t s = 0; s < a.num_axis_settings(); ++s) {
    const double total = a.slice_total(s) * 500.0;
    EXPECT_NEAR(total, std::round(total), 1e-9);
  }
  opts.seed = 10;
  EXPECT_NE(collect_distributions(frags[1], v, CutBackend::Bell, opts).values, a.values);
}

TEST(FragmentTensor, JsonRoundTrip) {
  const Circuit c = build_ghz_ladder(5);
  const auto frags = cut(to_dag(c), balanced_ghz_cutspec(5, 2));
  const auto d = collect_distributions(frags[1], generate_variants(frags[1]), CutBackend::Bell);
  const auto back = fragment_distribution_from_json(fragment_distribution_to_json(d));
  EXPECT_EQ(back.values, d.values);
  EXPECT_EQ(back.in_cuts, d.in_cuts);
  EXPECT_EQ(back.final_qubits, d.final_qubits);
  EXPECT_EQ(back.backend, d.backend);
  nlohmann::json broken = fragment_distribution_to_json(d);
  broken["values"].erase(0);
  EXPECT_THROW(fragment_distribution_from_json(broken), std::invalid_argument);
}

TEST(FragmentTensor, RoutedMatchesUnrouted) {
  const Circuit c = build_ghz_ladder(8);
  const auto frags = cut(to_dag(c), balanced_ghz_cutspec(8, 2));
  CollectOptions routed;
  routed.routing = johannesburg_graph();
  routed.placement = Placement::Identity;
  for (const Fragment& f : frags) {
    const auto v = generate_variants(f);
    const auto plain = collect_distributions(f, v, CutBackend::Bell);
    const auto moved = collect_distributions(f, v, CutBackend::Bell, routed);
    for (std::size_t i = 0; i < plain.values.size(); ++i)
      EXPECT_NEAR(moved.values[i], plain.values[i], 1e-10);
  }
}

}  // namespace
}  // namespace qdc
