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

#include "qdc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qdc/circuit_json.hpp"
#include "qdc/parallel.hpp"
#include "qdc/pipeline.hpp"

namespace qdc {

void ExperimentConfig::validate() const {
  if (qubit_counts.empty() || fragment_counts.empty()) {
    throw std::invalid_argument("sweep needs at least one qubit and fragment count");
  }
  for (std::size_t m : qubit_counts) {
    if (m < 2 || m % 2 != 0) {
      throw std::invalid_argument("qubit count " + std::to_string(m) +
                                  " is not an even number >= 2");
    }
    for (std::size_t k : fragment_counts) {
      if (k == 0 || k > m) {
        throw std::invalid_argument("fragment count " + std::to_string(k) +
                                    " outside 1.." + std::to_string(m));
      }
    }
  }
  if (shots && *shots == 0) throw std::invalid_argument("shots must be positive");
  if (noise) noise->validate();
}

std::optional<NoiseModel> ExperimentConfig::effective_noise() const {
  if (!noise) return std::nullopt;
  return apply_scenario(*noise, scenario);
}

std::optional<ConnectivityGraph> resolve_routing(const std::string& routing) {
  if (routing == "none") return std::nullopt;
  if (routing == "johannesburg") return johannesburg_graph();
  return load_coupling_map(routing);
}

PipelineOptions pipeline_options(const ExperimentConfig& config, std::size_t workers) {
  PipelineOptions options;
  options.noise = config.effective_noise();
  options.backend = config.backend;
  options.shots = config.shots;
  options.seed = config.seed;
  options.routing = resolve_routing(config.routing);
  options.placement = config.placement;
  options.workers = workers;
  return options;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
  if (j.contains("qubits")) c.qubit_counts = j["qubits"].get<std::vector<std::size_t>>();
  if (j.contains("fragments")) {
    c.fragment_counts = j["fragments"].get<std::vector<std::size_t>>();
  }
  if (j.contains("scenario")) {
    c.scenario = scenario_from_string(j["scenario"].get<std::string>());
  }
  if (j.contains("shots")) {
    if (j["shots"].is_string() && j["shots"] == "exact") {
      c.shots.reset();
    } else if (j["shots"].is_number_integer() && j["shots"].get<std::int64_t>() > 0) {
      c.shots = j["shots"].get<std::uint64_t>();
    } else {
      throw std::invalid_argument("shots must be \"exact\" or a positive integer");
    }
  }
  if (j.contains("routing")) c.routing = j["routing"].get<std::string>();
  if (j.contains("placement")) {
    const auto p = j["placement"].get<std::string>();
    if (p != "line" && p != "identity") {
      throw std::invalid_argument("placement must be line or identity");
    }
    c.placement = p == "line" ? Placement::Line : Placement::Identity;
  }
  if (j.contains("backend")) c.backend = cut_backend_from_string(j["backend"].get<std::string>());
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("workers")) c.workers = j["workers"].get<std::size_t>();
  if (j.contains("noise")) {
    if (j["noise"].is_null()) {
      c.noise.reset();
    } else {
      c.noise = noise_model_from_json(j["noise"]);
    }
  }
  return c;
}

const SweepRow* SweepResult::find(std::size_t m, std::size_t n_fragments) const {
  for (const SweepRow& r : rows) {
    if (r.m == m && r.n_fragments == n_fragments) return &r;
  }
  return nullptr;
}

double success_probability(const OutputDistribution& dist, std::size_t m) {
  if (m < 2 || m % 2 != 0) {
    throw std::invalid_argument("success probability needs an even m, got " +
                                std::to_string(m));
  }
  if (dist.num_bits != m) {
    throw std::invalid_argument("distribution over " + std::to_string(dist.num_bits) +
                                " bits for m = " + std::to_string(m));
  }
  const std::string zeros(m / 2, '0'), ones(m / 2, '1');
  return dist.at(zeros + ones) + dist.at(ones + zeros);
}

SweepRow run_point(const ExperimentConfig& config, std::size_t m, std::size_t n_fragments) {
  const auto start = std::chrono::steady_clock::now();
  const PipelineOptions options = pipeline_options(config, 1);
  const CutSpec spec = n_fragments == 1 ? CutSpec{} : balanced_ghz_cutspec(m, n_fragments);
  const PipelineResult result = run_cut_and_recombine(build_ghz_circuit(m), spec, options);
  SweepRow row;
  row.m = m;
  row.n_fragments = n_fragments;
  row.scenario = config.scenario;
  row.p_success = success_probability(result.distribution, m);
  row.total_probability = result.distribution.total();
  row.swap_count = result.swap_count;
  row.n_variant_circuits = result.variant_circuits;
  row.seed = config.seed;
  row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::pair<std::size_t, std::size_t>> points;
  for (std::size_t m : config.qubit_counts)
    for (std::size_t k : config.fragment_counts) points.emplace_back(m, k);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SweepResult result;
  result.rows.resize(points.size());
  parallel_for(points.size(), config.workers, [&](std::size_t i) {
    result.rows[i] = run_point(config, points[i].first, points[i].second);
  });
  return result;
}

double delta_p(const SweepResult& scenario, const SweepResult& baseline,
               std::size_t n_fragments) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const SweepRow& r : scenario.rows) {
    if (r.n_fragments != n_fragments) continue;
    const SweepRow* b = baseline.find(r.m, r.n_fragments);
    if (!b) {
      throw std::invalid_argument("baseline has no point (m=" + std::to_string(r.m) +
                                  ", n_f=" + std::to_string(n_fragments) + ")");
    }
    sum += r.p_success - b->p_success;
    ++count;
  }
  std::size_t baseline_count = 0;
  for (const SweepRow& r : baseline.rows) baseline_count += r.n_fragments == n_fragments;
  if (count == 0 || count != baseline_count) {
    throw std::invalid_argument("scenario and baseline grids differ at n_f = " +
                                std::to_string(n_fragments));
  }
  return sum / static_cast<double>(count);
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "m,n_fragments,scenario,p_success,swap_count,n_variant_circuits,seed\n";
  for (const SweepRow& r : result.rows) {
    os << r.m << ',' << r.n_fragments << ',' << to_string(r.scenario) << ','
       << format_double(r.p_success) << ',' << r.swap_count << ','
       << r.n_variant_circuits << ',' << r.seed << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& r : result.rows) {
    rows.push_back({{"m", r.m},
                    {"n_fragments", r.n_fragments},
                    {"scenario", to_string(r.scenario)},
                    {"p_success", r.p_success},
                    {"total_probability", r.total_probability},
                    {"swap_count", r.swap_count},
                    {"n_variant_circuits", r.n_variant_circuits},
                    {"seed", r.seed}});
  }
  return {{"rows", rows}};
}

void emit(const SweepResult& result, const std::string& format, const std::string& path) {
  if (format == "csv") {
    write_text_file(path, to_csv(result));
  } else if (format == "json") {
    write_text_file(path, to_json(result).dump(2) + "\n");
  } else {
    throw std::invalid_argument("unknown output format '" + format + "'");
  }
}

}  // namespace qdc
