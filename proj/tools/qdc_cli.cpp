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

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdc/circuit_json.hpp"
#include "qdc/experiment.hpp"
#include "qdc/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace qdc;

// Flag values shared by every subcommand. Anything left unset keeps the
// ExperimentConfig default; a --config file is applied last.
struct Flags {
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> fragments;
  std::string scenario;
  std::string shots;
  std::string routing;
  std::string placement;
  std::string backend;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string noise_file;
  bool noiseless = false;
  std::string config_file;
  std::string out;
  std::string format = "json";
  // Single-circuit commands.
  std::string circuit_file;
  std::string cutspec_file;
  std::string input_file;
  std::string bits;
  bool clip = false;
  bool direct = false;
};

void add_common(CLI::App* cmd, Flags& f, bool sweep) {
  cmd->add_option("--qubits", f.qubits,
                  sweep ? "GHZ widths (even)" : "GHZ width when no --circuit is given")
      ->delimiter(',');
  cmd->add_option("--fragments", f.fragments,
                  sweep ? "fragment counts" : "balanced fragment count when no --cutspec")
      ->delimiter(',');
  cmd->add_option("--scenario", f.scenario, "baseline|faster-readout|better-gates|better-coherence");
  cmd->add_option("--shots", f.shots, "N or exact");
  cmd->add_option("--routing", f.routing, "johannesburg|none|FILE");
  cmd->add_option("--placement", f.placement, "identity|line");
  cmd->add_option("--backend", f.backend, "eigenstate|bell");
  cmd->add_option("--seed", f.seed);
  cmd->add_option("--workers", f.workers, "0 uses every hardware thread");
  cmd->add_option("--noise", f.noise_file, "noise model JSON file");
  cmd->add_flag("--noiseless", f.noiseless, "disable every noise source");
  cmd->add_option("--config", f.config_file, "JSON file; its keys override flags");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
}

void add_circuit(CLI::App* cmd, Flags& f) {
  cmd->add_option("--circuit", f.circuit_file, "circuit JSON file (default: GHZ ladder)");
  cmd->add_option("--cutspec", f.cutspec_file, "cut specification JSON file");
}

ExperimentConfig build_config(const Flags& f, json* file_out, ExperimentConfig base = {}) {
  json j = json::object();
  if (!f.qubits.empty()) j["qubits"] = f.qubits;
  if (!f.fragments.empty()) j["fragments"] = f.fragments;
  if (!f.scenario.empty()) j["scenario"] = f.scenario;
  if (!f.shots.empty()) {
    if (f.shots == "exact") {
      j["shots"] = "exact";
    } else {
      try {
        std::size_t pos = 0;
        const long long n = std::stoll(f.shots, &pos);
        if (pos != f.shots.size()) throw std::invalid_argument("");
        j["shots"] = n;
      } catch (const std::exception&) {
        throw std::invalid_argument("--shots must be a positive integer or 'exact', got '" +
                                    f.shots + "'");
      }
    }
  }
  if (!f.routing.empty()) j["routing"] = f.routing;
  if (!f.placement.empty()) j["placement"] = f.placement;
  if (!f.backend.empty()) j["backend"] = f.backend;
  if (f.seed) j["seed"] = *f.seed;
  if (f.workers) j["workers"] = *f.workers;
  if (!f.noise_file.empty()) j["noise"] = read_json_file(f.noise_file);
  if (f.noiseless) j["noise"] = nullptr;
  ExperimentConfig config = config_from_json(j, std::move(base));
  if (!f.config_file.empty()) {
    const json file = read_json_file(f.config_file);
    config = config_from_json(file, config);
    *file_out = file;
  }
  return config;
}

// One GHZ ladder of width 4 cut in two unless told otherwise.
ExperimentConfig single_circuit_defaults() {
  ExperimentConfig c;
  c.qubit_counts = {4};
  c.fragment_counts = {2};
  return c;
}

struct Output {
  std::string path;
  std::string format;
};

Output resolve_output(const Flags& f, const json& file) {
  Output o{f.out, f.format};
  if (file.contains("out")) o.path = file["out"].get<std::string>();
  if (file.contains("format")) o.format = file["format"].get<std::string>();
  if (o.format != "csv" && o.format != "json") {
    throw std::invalid_argument("format must be csv or json, got '" + o.format + "'");
  }
  return o;
}

void write(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.path, text);
  }
}

std::size_t single(const std::vector<std::size_t>& values, const char* what) {
  if (values.size() != 1) {
    throw std::invalid_argument(std::string("this command takes one ") + what + " value");
  }
  return values.front();
}

struct Job {
  Circuit circuit{1};
  CutSpec spec;
};

// Circuit and cuts for the single-circuit commands: files when given,
// otherwise a GHZ ladder with balanced cuts.
Job build_job(const Flags& f, const ExperimentConfig& config) {
  Job job;
  if (!f.circuit_file.empty()) {
    job.circuit = circuit_from_json(read_json_file(f.circuit_file));
  } else {
    job.circuit = build_ghz_ladder(single(config.qubit_counts, "--qubits"));
  }
  if (!f.cutspec_file.empty()) {
    job.spec = cutspec_from_json(read_json_file(f.cutspec_file));
  } else if (f.circuit_file.empty()) {
    const std::size_t k = single(config.fragment_counts, "--fragments");
    if (k > 1) job.spec = balanced_ghz_cutspec(job.circuit.num_qubits(), k);
  }
  return job;
}

std::vector<Fragment> fragments_of(const Job& job) {
  if (job.spec.size() == 0) return {whole_circuit_fragment(job.circuit)};
  return cut(to_dag(job.circuit), job.spec);
}

json legs_json(const std::vector<Leg>& legs) {
  json out = json::array();
  for (const Leg& l : legs) out.push_back({{"cut", l.cut}, {"local_qubit", l.local_qubit}});
  return out;
}

std::string distribution_csv(const OutputDistribution& d) {
  std::ostringstream os;
  os << "bitstring,probability\n";
  char buf[32];
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", d.probs[i]);
    os << OutputDistribution::bitstring(i, d.num_bits) << ',' << buf << '\n';
  }
  return os.str();
}

int run_sweep_cmd(const Flags& f) {
  json file;
  const ExperimentConfig config = build_config(f, &file);
  const Output out = resolve_output(f, file);
  const SweepResult result = run_sweep(config);
  if (out.path.empty()) {
    std::cout << (out.format == "csv" ? to_csv(result) : to_json(result).dump(2) + "\n");
  } else {
    emit(result, out.format, out.path);
  }
  return 0;
}

int run_cut_cmd(const Flags& f) {
  json file;
  const ExperimentConfig config = build_config(f, &file, single_circuit_defaults());
  const Job job = build_job(f, config);
  json frags = json::array();
  for (const Fragment& fr : fragments_of(job)) {
    frags.push_back({{"index", fr.index},
                     {"num_qubits", fr.sub_circuit.num_qubits()},
                     {"incoming_legs", legs_json(fr.incoming_legs)},
                     {"outgoing_legs", legs_json(fr.outgoing_legs)},
                     {"final_qubits", fr.final_qubits},
                     {"local_wire", fr.local_wire},
                     {"gate_indices", fr.gate_indices},
                     {"variants", variant_count(fr, config.backend)},
                     {"circuit", circuit_to_json(fr.sub_circuit)}});
  }
  const json doc = {{"circuit", circuit_to_json(job.circuit)},
                    {"cutspec", cutspec_to_json(job.spec)},
                    {"fragments", frags}};
  write(resolve_output(f, file), doc.dump(2) + "\n");
  return 0;
}

int run_simulate_cmd(const Flags& f) {
  json file;
  const ExperimentConfig config = build_config(f, &file, single_circuit_defaults());
  const Output out = resolve_output(f, file);
  const Job job = build_job(f, config);
  const PipelineOptions opts = pipeline_options(config, config.workers);
  if (f.direct) {
    std::size_t swaps = 0;
    const OutputDistribution d = simulate_direct(job.circuit, opts, &swaps);
    if (out.format == "csv") {
      write(out, distribution_csv(d));
    } else {
      write(out, json{{"distribution", distribution_to_json(d)}, {"swap_count", swaps}}
                         .dump(2) + "\n");
    }
    return 0;
  }
  if (out.format == "csv") throw std::invalid_argument("simulate writes fragment tensors as json");
  const PipelineResult r = run_cut_and_recombine(job.circuit, job.spec, opts);
  json dists = json::array();
  for (const FragmentDistribution& d : r.distributions) {
    dists.push_back(fragment_distribution_to_json(d));
  }
  const json doc = {{"backend", std::string(to_string(opts.backend))},
                    {"num_qubits", job.circuit.num_qubits()},
                    {"variant_circuits", r.variant_circuits},
                    {"swap_count", r.swap_count},
                    {"fragments", dists}};
  write(out, doc.dump(2) + "\n");
  return 0;
}

RecombinationNetwork network_from_file(const std::string& path) {
  const json doc = read_json_file(path);
  const json& list = doc.is_array() ? doc : doc.at("fragments");
  std::vector<FragmentDistribution> dists;
  for (const json& j : list) dists.push_back(fragment_distribution_from_json(j));
  return build_network(dists);
}

int run_recombine_cmd(const Flags& f) {
  if (f.input_file.empty()) throw std::invalid_argument("recombine needs --in FILE");
  json file;
  build_config(f, &file, single_circuit_defaults());
  const Output out = resolve_output(f, file);
  const RecombinationNetwork net = network_from_file(f.input_file);
  const OutputDistribution d = reconstruct_full(net, f.clip);
  if (out.format == "csv") {
    write(out, distribution_csv(d));
  } else {
    write(out, json{{"distribution", distribution_to_json(d)}, {"total", d.total()}}.dump(2) +
                   "\n");
  }
  return 0;
}

int run_explain_cmd(const Flags& f) {
  json file;
  const ExperimentConfig config = build_config(f, &file, single_circuit_defaults());
  const Output out = resolve_output(f, file);
  if (out.format == "csv") throw std::invalid_argument("explain-contraction writes json");
  RecombinationNetwork net;
  if (!f.input_file.empty()) {
    net = network_from_file(f.input_file);
  } else {
    // Only the network shape matters here, so the fragments are simulated
    // without noise.
    ExperimentConfig quiet = config;
    quiet.noise.reset();
    quiet.shots.reset();
    quiet.routing = "none";
    const Job job = build_job(f, config);
    const PipelineResult r =
        run_cut_and_recombine(job.circuit, job.spec, pipeline_options(quiet, config.workers));
    net = build_network(r.distributions);
  }
  if (!f.bits.empty()) net = fix_output(net, f.bits);
  json doc = plan_to_json(net, general_contraction_plan(net));
  if (net.is_path()) {
    const ContractionPlan chain = sequential_chain_plan(net);
    json steps = json::array();
    for (const auto& s : chain.steps) steps.push_back(s.cost);
    doc["chain_step_costs"] = steps;
    doc["chain_total_cost"] = chain.total_cost;
  }
  write(out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut, simulate and recombine noisy quantum circuits"};
  app.require_subcommand(1);
  Flags f;

  auto* sweep = app.add_subcommand("ghz-sweep", "GHZ success probability over (m, n_f)");
  add_common(sweep, f, true);

  auto* cut_cmd = app.add_subcommand("cut", "show the fragments of a cut circuit");
  add_common(cut_cmd, f, false);
  add_circuit(cut_cmd, f);

  auto* sim = app.add_subcommand("simulate", "simulate fragment variants");
  add_common(sim, f, false);
  add_circuit(sim, f);
  sim->add_flag("--direct", f.direct, "simulate the uncut circuit instead");

  auto* rec = app.add_subcommand("recombine", "reconstruct the output distribution");
  add_common(rec, f, false);
  rec->add_option("--in", f.input_file, "output of 'simulate'")->required();
  rec->add_flag("--clip", f.clip, "clip negative entries and renormalize");

  auto* explain = app.add_subcommand("explain-contraction", "contraction plan and cost ledger");
  add_common(explain, f, false);
  add_circuit(explain, f);
  explain->add_option("--in", f.input_file, "output of 'simulate'");
  explain->add_option("--bits", f.bits, "fix the output bitstring (qubit 0 first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(f);
    if (cut_cmd->parsed()) return run_cut_cmd(f);
    if (sim->parsed()) return run_simulate_cmd(f);
    if (rec->parsed()) return run_recombine_cmd(f);
    if (explain->parsed()) return run_explain_cmd(f);
  } catch (const std::exception& e) {
    std::cerr << "qdc: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
