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
#include <optional>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/cutter.hpp"
#include "qdc/density.hpp"
#include "qdc/noise.hpp"
#include "qdc/recombiner.hpp"
#include "qdc/router.hpp"

namespace qdc {

struct PipelineOptions {
  std::optional<NoiseModel> noise;
  CutBackend backend = CutBackend::Bell;
  /// nullopt: exact fragment distributions.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::optional<ConnectivityGraph> routing;
  Placement placement = Placement::Line;
  std::size_t workers = 0;
  bool clip = false;

  CollectOptions collect_options() const;
};

struct PipelineResult {
  OutputDistribution distribution;
  std::size_t num_fragments = 0;
  std::size_t num_cuts = 0;
  std::size_t variant_circuits = 0;
  /// Sum over fragments of the largest per-variant SWAP count.
  std::size_t swap_count = 0;
  std::vector<Fragment> fragments;
  std::vector<FragmentDistribution> distributions;
  ContractionPlan plan;
};

/// Cut, generate variants, route and simulate them, then recombine. An
/// empty spec runs the circuit as a single fragment. Gate durations are
/// taken from the noise model when one is given.
PipelineResult run_cut_and_recombine(const Circuit& circuit, const CutSpec& spec,
                                     const PipelineOptions& options);

/// Routes and simulates the uncut circuit with a Z measurement on every
/// qubit.
OutputDistribution simulate_direct(const Circuit& circuit, const PipelineOptions& options,
                                   std::size_t* swap_count = nullptr);

}  // namespace qdc
