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

#include "qdc/noise.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qdc {
namespace {

using cd = std::complex<double>;

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::Baseline:
      return "baseline";
    case Scenario::FasterReadout:
      return "faster-readout";
    case Scenario::BetterGates:
      return "better-gates";
    case Scenario::BetterCoherence:
      return "better-coherence";
  }
  return "?";
}

Scenario scenario_from_string(std::string_view name) {
  for (Scenario s : kAllScenarios) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

double NoiseModel::readout_error() const {
  return 1.0 - std::exp(-readout_tau_us / readout_t1_us);
}

double NoiseModel::pure_dephasing_rate() const {
  return 1.0 / t2_us - 1.0 / (2.0 * t1_us);
}

void NoiseModel::validate() const {
  if (!(t1_us > 0.0) || !(t2_us > 0.0) || !(readout_t1_us > 0.0)) {
    throw std::invalid_argument("T1 and T2 must be positive");
  }
  if (t2_us > 2.0 * t1_us) {
    throw std::invalid_argument("T2 must not exceed 2 T1");
  }
  if (!(readout_tau_us >= 0.0)) {
    throw std::invalid_argument("readout duration must be >= 0");
  }
  require_probability(depol_1q, "depol_1q");
  require_probability(depol_2q, "depol_2q");
  for (const auto& [kind, ns] : gate_durations.ns) {
    if (!(ns >= 0.0)) {
      throw std::invalid_argument("negative duration for gate " +
                                  std::string(to_string(kind)));
    }
  }
}

CMatrix KrausChannel::superoperator() const {
  const Eigen::Index d = kraus_ops.front().rows();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const CMatrix& k : kraus_ops) {
    for (Eigen::Index rp = 0; rp < d; ++rp)
      for (Eigen::Index cp = 0; cp < d; ++cp)
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c)
            s(rp * d + cp, r * d + c) += k(rp, r) * std::conj(k(cp, c));
  }
  return s;
}

ReadoutPovm ReadoutPovm::from_model(const NoiseModel& model) {
  return {model.enabled.readout ? model.readout_error() : 0.0};
}

CMatrix ReadoutPovm::effect() const { return diag2(0.0, 1.0 - gamma); }

CMatrix ReadoutPovm::complement() const {
  return CMatrix::Identity(2, 2) - effect();
}

double solve_readout_tau(double gamma, double t1_us) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("readout error must lie in [0, 1)");
  }
  return -t1_us * std::log1p(-gamma);
}

double depolarizing_average_error(double q, std::size_t arity) {
  // Process fidelity of the product channel is the weight on I...I; the
  // average fidelity follows from F_avg = (d F_pro + 1) / (d + 1).
  const double identity_weight =
      std::pow(1.0 - 0.75 * q, static_cast<double>(arity));
  const double d = std::pow(2.0, static_cast<double>(arity));
  return 1.0 - (d * identity_weight + 1.0) / (d + 1.0);
}

double depolarizing_from_average_error(double error, std::size_t arity) {
  if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
  const double d = std::pow(2.0, static_cast<double>(arity));
  const double identity_weight = 1.0 - error * (d + 1.0) / d;
  if (!(identity_weight >= 0.0 && identity_weight <= 1.0)) {
    throw std::invalid_argument("average error out of range");
  }
  return (1.0 - std::pow(identity_weight, 1.0 / static_cast<double>(arity))) /
         0.75;
}

NoiseModel johannesburg_default() {
  NoiseModel m;
  m.t1_us = kJohannesburgT1Us;
  m.t2_us = kJohannesburgT2Us;
  m.readout_t1_us = kJohannesburgT1Us;
  m.readout_tau_us = solve_readout_tau(kJohannesburgReadoutError, m.readout_t1_us);
  m.depol_1q = depolarizing_from_average_error(kJohannesburgGateError1q, 1);
  m.depol_2q = depolarizing_from_average_error(kJohannesburgGateError2q, 2);
  return m;
}

KrausChannel depolarizing_channel(double q, std::size_t arity) {
  require_probability(q, "depolarizing parameter");
  if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
  std::vector<CMatrix> one;
  if (q == 0.0) {
    one.push_back(CMatrix::Identity(2, 2));
  } else {
    one.push_back(std::sqrt(1.0 - 0.75 * q) * pauli_matrix(0));
    for (int i = 1; i <= 3; ++i) one.push_back(std::sqrt(q / 4.0) * pauli_matrix(i));
  }
  if (arity == 1) return {one, 1};
  KrausChannel two{{}, 2};
  for (const CMatrix& a : one)
    for (const CMatrix& b : one) two.kraus_ops.push_back(kron(a, b));
  return two;
}

KrausChannel amplitude_damping_with_probability(double p) {
  require_probability(p, "amplitude damping probability");
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(p);
  return {{diag2(1.0, std::sqrt(1.0 - p)), k1}, 1};
}

KrausChannel amplitude_damping_channel(double idle_ns, double t1_us) {
  if (!(idle_ns >= 0.0)) throw std::invalid_argument("idle time must be >= 0");
  if (!(t1_us > 0.0)) throw std::invalid_argument("T1 must be positive");
  return amplitude_damping_with_probability(
      1.0 - std::exp(-(idle_ns * 1e-3) / t1_us));
}

KrausChannel dephasing_channel(double idle_ns, double t1_us, double t2_us) {
  if (!(idle_ns >= 0.0)) throw std::invalid_argument("idle time must be >= 0");
  if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
    throw std::invalid_argument("T1 and T2 must be positive");
  }
  if (t2_us > 2.0 * t1_us) throw std::invalid_argument("T2 must not exceed 2 T1");
  const double rate = 1.0 / t2_us - 1.0 / (2.0 * t1_us);
  const double p = 1.0 - std::exp(-2.0 * (idle_ns * 1e-3) * rate);
  return {{diag2(1.0, std::sqrt(1.0 - p)), diag2(0.0, std::sqrt(p))}, 1};
}

NoiseModel apply_scenario(const NoiseModel& model, Scenario scenario) {
  NoiseModel out = model;
  switch (scenario) {
    case Scenario::Baseline:
      break;
    case Scenario::FasterReadout:
      out.readout_tau_us /= 5.0;
      break;
    case Scenario::BetterGates:
      out.depol_1q /= 5.0;
      out.depol_2q /= 5.0;
      break;
    case Scenario::BetterCoherence:
      out.t1_us *= 5.0;
      out.t2_us *= 5.0;
      break;
  }
  return out;
}

NoiseModel noise_model_from_json(const nlohmann::json& j) {
  NoiseModel m = johannesburg_default();
  m.readout_tau_us = j.value("readout_tau_us", m.readout_tau_us);
  m.readout_t1_us = j.value("readout_t1_us", m.readout_t1_us);
  m.t1_us = j.value("t1_us", m.t1_us);
  m.t2_us = j.value("t2_us", m.t2_us);
  m.depol_1q = j.value("depol_1q", m.depol_1q);
  m.depol_2q = j.value("depol_2q", m.depol_2q);
  if (j.contains("gate_durations_ns")) {
    for (const auto& [name, ns] : j.at("gate_durations_ns").items()) {
      m.gate_durations.ns[gate_kind_from_string(name)] = ns.get<double>();
    }
  }
  if (j.contains("enabled")) {
    const auto& e = j.at("enabled");
    m.enabled.readout = e.value("readout", true);
    m.enabled.gate = e.value("gate", true);
    m.enabled.idle = e.value("idle", true);
  }
  if (j.contains("scenario")) {
    m = apply_scenario(m, scenario_from_string(j.at("scenario").get<std::string>()));
  }
  m.validate();
  return m;
}

nlohmann::json noise_model_to_json(const NoiseModel& model) {
  nlohmann::json durations = nlohmann::json::object();
  for (const auto& [kind, ns] : model.gate_durations.ns) {
    durations[std::string(to_string(kind))] = ns;
  }
  return {{"readout_tau_us", model.readout_tau_us},
          {"readout_t1_us", model.readout_t1_us},
          {"t1_us", model.t1_us},
          {"t2_us", model.t2_us},
          {"depol_1q", model.depol_1q},
          {"depol_2q", model.depol_2q},
          {"gate_durations_ns", durations},
          {"enabled",
           {{"readout", model.enabled.readout},
            {"gate", model.enabled.gate},
            {"idle", model.enabled.idle}}}};
}

}  // namespace qdc
