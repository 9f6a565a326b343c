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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/pauli.hpp"

namespace qdc {

// Processor averages used for the default model.
inline constexpr double kJohannesburgReadoutError = 0.041;
inline constexpr double kJohannesburgGateError1q = 0.00041;
inline constexpr double kJohannesburgGateError2q = 0.00202;
inline constexpr double kJohannesburgT1Us = 65.0;
inline constexpr double kJohannesburgT2Us = 70.0;

enum class Scenario { Baseline, FasterReadout, BetterGates, BetterCoherence };

inline constexpr Scenario kAllScenarios[] = {
    Scenario::Baseline, Scenario::FasterReadout, Scenario::BetterGates,
    Scenario::BetterCoherence};

/// "baseline", "faster-readout", "better-gates", "better-coherence".
std::string_view to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view name);

struct NoiseFlags {
  bool readout = true;
  bool gate = true;
  bool idle = true;
  bool operator==(const NoiseFlags&) const = default;
};

/// Qubit-averaged hardware noise description. Times are in microseconds,
/// gate durations in nanoseconds. depol_1q / depol_2q are the depolarizing
/// parameters q of rho -> (1-q) rho + q I/2, applied per acted qubit.
struct NoiseModel {
  double readout_tau_us = 0.0;
  /// Relaxation time of the readout calibration; idle channels use t1_us.
  double readout_t1_us = kJohannesburgT1Us;
  double t1_us = kJohannesburgT1Us;
  double t2_us = kJohannesburgT2Us;
  double depol_1q = 0.0;
  double depol_2q = 0.0;
  GateDurations gate_durations;
  NoiseFlags enabled;

  /// gamma = 1 - exp(-tau / readout_t1_us).
  double readout_error() const;
  /// 1/T_phi = 1/T2 - 1/(2 T1), in 1/us.
  double pure_dephasing_rate() const;
  /// Throws std::invalid_argument on unphysical parameters.
  void validate() const;

  bool operator==(const NoiseModel&) const = default;
};

struct KrausChannel {
  std::vector<CMatrix> kraus_ops;
  std::size_t arity = 1;

  double completeness_error() const { return kraus_completeness_error(kraus_ops); }
  /// 4^k x 4^k superoperator acting on row-major vec(rho) of the k acted
  /// qubits: S[(r',c'),(r,c)] = sum_K K[r',r] conj(K[c',c]).
  CMatrix superoperator() const;
};

/// Two-outcome readout {I - E, E} with E = diag(0, 1 - gamma) for outcome 1.
struct ReadoutPovm {
  double gamma = 0.0;

  static ReadoutPovm from_model(const NoiseModel& model);
  CMatrix effect() const;
  CMatrix complement() const;
};

/// tau solving gamma = 1 - exp(-tau / T1).
double solve_readout_tau(double gamma, double t1_us);

/// Average gate error 1 - F_avg of depolarizing_channel(q, arity).
double depolarizing_average_error(double q, std::size_t arity);
/// Inverse of depolarizing_average_error.
double depolarizing_from_average_error(double error, std::size_t arity);

/// Johannesburg calibration: gamma 4.1%, eps1 0.041%, eps2 0.202%, T1 65 us,
/// T2 70 us.
NoiseModel johannesburg_default();

/// K0 = sqrt(1 - 3q/4) I, Ki = sqrt(q/4) sigma_i; arity 2 is the tensor
/// product of two one-qubit sets. q = 0 yields the single operator I.
KrausChannel depolarizing_channel(double q, std::size_t arity);

/// Amplitude damping with p = 1 - exp(-idle / T1).
KrausChannel amplitude_damping_channel(double idle_ns, double t1_us);
KrausChannel amplitude_damping_with_probability(double p);

/// Pure dephasing with p = 1 - exp(-2 idle / T_phi).
KrausChannel dephasing_channel(double idle_ns, double t1_us, double t2_us);

/// FasterReadout: readout_tau / 5. BetterGates: depolarizing q / 5.
/// BetterCoherence: idle T1 and T2 x 5; the readout error is unchanged.
NoiseModel apply_scenario(const NoiseModel& model, Scenario scenario);

/// Keys: readout_tau_us, readout_t1_us, t1_us, t2_us, depol_1q, depol_2q,
/// gate_durations_ns {kind: ns}, scenario. Missing keys keep the
/// johannesburg_default() values; "scenario" is applied last.
NoiseModel noise_model_from_json(const nlohmann::json& j);
nlohmann::json noise_model_to_json(const NoiseModel& model);

}  // namespace qdc
