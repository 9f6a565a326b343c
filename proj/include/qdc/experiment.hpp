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
#include <string>
#include <vector>

#include "json.hpp"
#include "qdc/cutter.hpp"
#include "qdc/density.hpp"
#include "qdc/noise.hpp"
#include "qdc/pipeline.hpp"
#include "qdc/router.hpp"

namespace qdc {

struct ExperimentConfig {
  std::vector<std::size_t> qubit_counts{4, 6, 8, 10};
  std::vector<std::size_t> fragment_counts{1, 2, 3, 4};
  Scenario scenario = Scenario::Baseline;
  /// Model before the scenario transform; nullopt runs noiseless.
  std::optional<NoiseModel> noise = johannesburg_default();
  /// nullopt: exact fragment distributions.
  std::optional<std::uint64_t> shots;
  /// "johannesburg", "none", or a coupling-map file.
  std::string routing = "johannesburg";
  /// Identity keeps qubit i on physical qubit i, so wider circuits pick up
  /// SWAPs; Line searches for a path embedding first.
  Placement placement = Placement::Identity;
  CutBackend backend = CutBackend::Eigenstate;
  std::uint64_t seed = 0;
  /// Concurrent sweep points; 0 uses every hardware thread.
  std::size_t workers = 0;

  /// Throws std::invalid_argument on odd or too small qubit counts and
  /// fragment counts outside 1..m.
  void validate() const;
  /// Noise model with the scenario applied.
  std::optional<NoiseModel> effective_noise() const;
};

/// Graph for a routing choice, nullopt for "none".
std::optional<ConnectivityGraph> resolve_routing(const std::string& routing);

/// Pipeline settings of one sweep point (scenario noise, routing graph,
/// placement, backend, shots, seed). Workers are left at `workers`.
PipelineOptions pipeline_options(const ExperimentConfig& config, std::size_t workers = 0);

/// Overrides `base` with the keys present in `j`: qubits, fragments,
/// scenario, shots ("exact" or int), routing, placement, backend, seed,
/// workers, noise (object as in noise_model_from_json, or null).
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

struct SweepRow {
  std::size_t m = 0;
  std::size_t n_fragments = 0;
  Scenario scenario = Scenario::Baseline;
  double p_success = 0.0;
  double total_probability = 0.0;
  std::size_t swap_count = 0;
  std::size_t n_variant_circuits = 0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  const SweepRow* find(std::size_t m, std::size_t n_fragments) const;
};

/// p(0^{m/2} 1^{m/2}) + p(1^{m/2} 0^{m/2}).
double success_probability(const OutputDistribution& dist, std::size_t m);

/// One GHZ point: build, cut into n_fragments balanced pieces, route,
/// simulate, recombine.
SweepRow run_point(const ExperimentConfig& config, std::size_t m, std::size_t n_fragments);

/// Every (m, n_f) point, rows sorted by (m, n_f).
SweepResult run_sweep(const ExperimentConfig& config);

/// Mean over m of P(scenario) - P(baseline) at fixed n_f.
double delta_p(const SweepResult& scenario, const SweepResult& baseline,
               std::size_t n_fragments);

/// Columns m, n_fragments, scenario, p_success, swap_count,
/// n_variant_circuits, seed. Wall time is not written so that output bytes
/// depend on the inputs only.
std::string to_csv(const SweepResult& result);
nlohmann::json to_json(const SweepResult& result);

/// Writes csv or json to `path`; errors carry the path.
void emit(const SweepResult& result, const std::string& format, const std::string& path);

}  // namespace qdc
