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

// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion
// fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/statevector.hpp"
#include "qdc/experiment.hpp"
#include "qdc/pauli.hpp"
#include "qdc/pipeline.hpp"

namespace {

using namespace qdc;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<std::pair<std::size_t, std::size_t>> oracle_grid() {
  std::vector<std::pair<std::size_t, std::size_t>> grid;
  for (std::size_t m : {2u, 4u, 6u, 8u, 10u})
    for (std::size_t k : {2u, 3u, 4u})
      if (k <= m) grid.emplace_back(m, k);
  return grid;
}

OutputDistribution noiseless_cut(std::size_t m, std::size_t k, CutBackend backend) {
  PipelineOptions opts;
  opts.backend = backend;
  return run_cut_and_recombine(build_ghz_circuit(m), balanced_ghz_cutspec(m, k), opts)
      .distribution;
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (auto [m, k] : oracle_grid()) {
    const auto expected = oracle::run_statevector(build_ghz_circuit(m));
    for (CutBackend b : {CutBackend::Eigenstate, CutBackend::Bell})
      worst = std::max(worst, max_abs_diff(noiseless_cut(m, k, b).probs, expected));
  }
  return {worst < 1e-10, fmt("max |cut - uncut| = %.3g over %zu (m, k) points, limit 1e-10",
                             worst, oracle_grid().size())};
}

Outcome variant_equivalence() {
  double worst = 0.0;
  for (auto [m, k] : oracle_grid()) {
    worst = std::max(worst, max_abs_diff(noiseless_cut(m, k, CutBackend::Eigenstate).probs,
                                         noiseless_cut(m, k, CutBackend::Bell).probs));
  }
  return {worst < 1e-10, fmt("max |eigenstate - bell| = %.3g, limit 1e-10", worst)};
}

Outcome identity_decomposition() {
  const double err = identity_decomposition_error(GammaTensor::tilde());
  const bool check = identity_decomposition_check();
  return {check && err < 1e-12, fmt("entrywise error %.3g, limit 1e-12", err)};
}

CMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = {g(rng), g(rng)};
  return (a + a.adjoint()) / 2.0;
}

Outcome trace_relation() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (int i = 0; i < 1000; ++i) {
      const CMatrix a = random_hermitian(dim, rng), b = random_hermitian(dim, rng);
      const double lhs = (a.adjoint() * b).trace().real();
      const double rhs =
          static_cast<double>(dim) * scalar_product(pauli_decompose(a), pauli_decompose(b));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {worst < 1e-12, fmt("max |Tr[A^dag B] - 2^n <<A|B>>| = %.3g over 3000 pairs, limit 1e-12",
                             worst)};
}

Outcome readout_calibration() {
  const NoiseModel m = johannesburg_default();
  const double tau = solve_readout_tau(0.041, 65.0);
  Circuit one(1);
  one.add(Gate::x(0));
  const double flip =
      measure_distribution(simulate(one), ReadoutPovm::from_model(m)).probs[0];
  const bool tau_ok = std::abs(tau - 2.75) <= 0.01;
  const bool flip_ok = std::abs(flip - 0.041) <= 1e-6;
  return {tau_ok && flip_ok,
          fmt("tau = %.4f us (target 2.75 +- 0.01: %s), p(flip) = %.7f (target 0.041 +- 1e-6: %s)",
              tau, tau_ok ? "ok" : "off", flip, flip_ok ? "ok" : "off")};
}

Eigen::VectorXcd haar_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

double sampled_error(const KrausChannel& ch, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t dim = std::size_t{1} << ch.arity;
  double fidelity = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::VectorXcd psi = haar_state(dim, rng);
    const CMatrix rho = psi * psi.adjoint();
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const CMatrix& k : ch.kraus_ops) out += k * rho * k.adjoint();
    fidelity += (psi.adjoint() * out * psi)(0, 0).real();
  }
  return 1.0 - fidelity / static_cast<double>(samples);
}

Outcome depolarizing_calibration() {
  const NoiseModel m = johannesburg_default();
  const double e1 = sampled_error(depolarizing_channel(m.depol_1q, 1), 20000, 1);
  const double e2 = sampled_error(depolarizing_channel(m.depol_2q, 2), 20000, 2);
  const double r1 = std::abs(e1 - 0.00041) / 0.00041;
  const double r2 = std::abs(e2 - 0.00202) / 0.00202;
  return {r1 <= 0.1 && r2 <= 0.1,
          fmt("eps1 = %.4f%% (rel %.3f), eps2 = %.4f%% (rel %.3f), 20000 Haar states, limit 0.1",
              100 * e1, r1, 100 * e2, r2)};
}

RecombinationNetwork chain_network(std::size_t k) {
  const std::size_t m = 8;
  const Circuit c = build_ghz_ladder(m);
  std::vector<FragmentDistribution> dists;
  for (const Fragment& f : cut(to_dag(c), balanced_ghz_cutspec(m, k)))
    dists.push_back(collect_distributions(f, generate_variants(f), CutBackend::Bell));
  return fix_output(build_network(dists), "00001111");
}

Outcome chain_costs() {
  std::ostringstream os;
  bool totals_ok = true, steps_ok = true, greedy_ok = true;
  for (std::size_t k = 2; k <= 8; ++k) {
    const RecombinationNetwork net = chain_network(k);
    const ContractionPlan seq = sequential_chain_plan(net);
    std::vector<std::uint64_t> expected{12};
    for (std::size_t i = 2; i < k; ++i) expected.insert(expected.end(), {36, 12});
    expected.push_back(6);
    std::vector<std::uint64_t> got;
    for (const auto& s : seq.steps) got.push_back(s.cost);
    totals_ok &= seq.total_cost == 48 * k - 78;
    steps_ok &= got == expected;
    const std::uint64_t greedy = general_contraction_plan(net).total_cost;
    std::uint64_t bound = 1;
    for (std::size_t i = 1; i < k; ++i) bound *= 12;
    if (greedy > bound) {
      greedy_ok = false;
      os << " greedy(K=" << k << ")=" << greedy << " > 12^" << k - 1 << "=" << bound << ";";
    }
  }
  return {totals_ok && steps_ok && greedy_ok,
          fmt("chain totals 48K-78: %s, step sequence: %s, greedy <= 12^(K-1): %s%s",
              totals_ok ? "ok" : "off", steps_ok ? "ok" : "off", greedy_ok ? "ok" : "off",
              os.str().c_str())};
}

std::map<Scenario, SweepResult>& sweeps() {
  static std::map<Scenario, SweepResult> cache;
  if (cache.empty()) {
    for (Scenario s : kAllScenarios) {
      ExperimentConfig c;
      c.scenario = s;
      cache[s] = run_sweep(c);
    }
  }
  return cache;
}

Outcome size_and_fragment_trends() {
  const SweepResult& base = sweeps()[Scenario::Baseline];
  bool decreasing = true, cutting_helps = true;
  std::ostringstream os;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t m = 6; m <= 10; m += 2) {
      if (!(base.find(m, k)->p_success < base.find(m - 2, k)->p_success)) decreasing = false;
    }
  }
  for (std::size_t m : {8u, 10u}) {
    const double p4 = base.find(m, 4)->p_success, p1 = base.find(m, 1)->p_success;
    os << fmt(" m=%zu: P(4)=%.4f P(1)=%.4f;", m, p4, p1);
    cutting_helps &= p4 > p1;
  }
  return {decreasing && cutting_helps,
          fmt("(a) strictly decreasing in m: %s, (b)%s %s", decreasing ? "ok" : "off",
              os.str().c_str(), cutting_helps ? "ok" : "off")};
}

Outcome scenario_gains() {
  const SweepResult& base = sweeps()[Scenario::Baseline];
  std::vector<double> fr, bc;
  bool baseline_zero = true;
  for (std::size_t k = 1; k <= 4; ++k) {
    fr.push_back(delta_p(sweeps()[Scenario::FasterReadout], base, k));
    bc.push_back(delta_p(sweeps()[Scenario::BetterCoherence], base, k));
    baseline_zero &= delta_p(base, base, k) == 0.0;
  }
  bool fr_ok = true, bc_ok = true;
  for (std::size_t i = 1; i < fr.size(); ++i) {
    fr_ok &= fr[i] >= fr[i - 1];
    bc_ok &= bc[i] <= bc[i - 1];
  }
  return {fr_ok && bc_ok && baseline_zero,
          fmt("dP(readout) = [%.4f %.4f %.4f %.4f] %s, dP(coherence) = [%.4f %.4f %.4f %.4f] "
              "%s, dP(baseline) = 0: %s",
              fr[0], fr[1], fr[2], fr[3], fr_ok ? "ok" : "off", bc[0], bc[1], bc[2], bc[3],
              bc_ok ? "ok" : "off", baseline_zero ? "ok" : "off")};
}

OutputDistribution routed_noiseless(const Circuit& c, Placement p, std::size_t* swaps) {
  const RoutedCircuit r = route(c, johannesburg_graph(), 0, p);
  *swaps = r.swap_count;
  const CompactCircuit small = compact(r);
  return to_logical_order(measure_distribution(simulate(small.circuit)),
                          small.logical_to_compact);
}

// Exhaustive search for a simple path with `len` vertices.
bool has_simple_path(const ConnectivityGraph& g, std::size_t len) {
  std::vector<bool> used(g.num_qubits(), false);
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t depth) {
    if (depth == len) return true;
    for (std::size_t w : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = true;
      if (dfs(w, depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  for (std::size_t s = 0; s < g.num_qubits(); ++s) {
    used.assign(g.num_qubits(), false);
    used[s] = true;
    if (dfs(s, 1)) return true;
  }
  return false;
}

Outcome routing_soundness() {
  double worst = 0.0;
  std::size_t forced_swaps = 0;
  for (std::size_t m : {2u, 4u, 6u, 8u}) {
    const Circuit c = build_ghz_circuit(m);
    const auto expected = oracle::run_statevector(c);
    for (Placement p : {Placement::Line, Placement::Identity}) {
      std::size_t swaps = 0;
      worst = std::max(worst, max_abs_diff(routed_noiseless(c, p, &swaps).probs, expected));
      if (p == Placement::Identity) forced_swaps += swaps;
    }
  }
  bool zero_when_embeddable = true;
  std::size_t embeddable = 0;
  for (std::size_t m = 2; m <= 20; m += 2) {
    if (!has_simple_path(johannesburg_graph(), m)) continue;
    ++embeddable;
    zero_when_embeddable &= route(build_ghz_circuit(m), johannesburg_graph()).swap_count == 0;
  }
  return {worst < 1e-10 && zero_when_embeddable,
          fmt("max |routed - unrouted| = %.3g (limit 1e-10, %zu SWAPs exercised), zero SWAPs "
              "on %zu embeddable ladders: %s",
              worst, forced_swaps, embeddable, zero_when_embeddable ? "ok" : "off")};
}

Outcome normalization() {
  double worst_total = 0.0;
  std::size_t points = 0;
  for (auto& [s, result] : sweeps()) {
    for (const SweepRow& r : result.rows) {
      worst_total = std::max(worst_total, std::abs(r.total_probability - 1.0));
      ++points;
    }
  }
  double worst_degenerate = 0.0;
  ExperimentConfig config;
  const PipelineOptions opts = pipeline_options(config);
  for (std::size_t m : config.qubit_counts) {
    const Circuit c = build_ghz_circuit(m);
    worst_degenerate = std::max(
        worst_degenerate, max_abs_diff(run_cut_and_recombine(c, CutSpec{}, opts).distribution.probs,
                                       simulate_direct(c, opts).probs));
  }
  return {worst_total < 1e-6 && worst_degenerate < 1e-9,
          fmt("max |sum - 1| = %.3g over %zu points (limit 1e-6), n_f=1 vs direct = %.3g "
              "(limit 1e-9)",
              worst_total, points, worst_degenerate)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"variant equivalence", variant_equivalence},
      {"identity decomposition", identity_decomposition},
      {"trace relation", trace_relation},
      {"readout calibration", readout_calibration},
      {"depolarizing calibration", depolarizing_calibration},
      {"contraction cost", chain_costs},
      {"success probability trends", size_and_fragment_trends},
      {"scenario gains", scenario_gains},
      {"routing soundness", routing_soundness},
      {"normalization under noise", normalization},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
