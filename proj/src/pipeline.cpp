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

#include "qdc/pipeline.hpp"

namespace qdc {

CollectOptions PipelineOptions::collect_options() const {
  CollectOptions c;
  c.noise = noise;
  c.shots = shots;
  c.seed = seed;
  c.routing = routing;
  c.placement = placement;
  c.workers = workers;
  return c;
}

namespace {

GateDurations durations_of(const PipelineOptions& options) {
  return options.noise ? options.noise->gate_durations : GateDurations{};
}

}  // namespace

PipelineResult run_cut_and_recombine(const Circuit& circuit, const CutSpec& spec,
                                     const PipelineOptions& options) {
  const GateDurations durations = durations_of(options);
  const Circuit timed = retime(circuit, durations);
  PipelineResult result;
  result.fragments = spec.cut_edges.empty()
                         ? std::vector<Fragment>{whole_circuit_fragment(timed)}
                         : cut(CircuitDag(timed), spec);
  result.num_fragments = result.fragments.size();
  result.num_cuts = spec.size();
  const CollectOptions collect = options.collect_options();
  for (const Fragment& f : result.fragments) {
    CollectStats stats;
    result.distributions.push_back(collect_distributions(
        f, generate_variants(f, options.backend, durations), options.backend, collect,
        &stats));
    result.variant_circuits += stats.circuits;
    result.swap_count += stats.swap_count;
  }
  const RecombinationNetwork network = build_network(result.distributions);
  result.plan = general_contraction_plan(network);
  const Tensor t = permute(execute_plan(network, result.plan), network.external_labels);
  result.distribution = OutputDistribution{network.num_qubits(), t.data};
  if (options.clip) result.distribution = clip_and_renormalize(result.distribution);
  return result;
}

OutputDistribution simulate_direct(const Circuit& circuit, const PipelineOptions& options,
                                   std::size_t* swap_count) {
  const GateDurations durations = durations_of(options);
  Circuit measured = retime(circuit, durations);
  for (std::size_t q = 0; q < measured.num_qubits(); ++q) {
    measured.add(Gate::measure(q, PauliAxis::Z));
  }
  return run_variant(measured, options.collect_options(), 0, swap_count);
}

}  // namespace qdc
