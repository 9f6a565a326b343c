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

#include "qdc/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

namespace qdc {
namespace {

using cd = std::complex<double>;

struct SparseEntry {
  int row;
  int col;
  cd value;
};

std::vector<SparseEntry> nonzeros(const CMatrix& m) {
  std::vector<SparseEntry> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > 1e-15) {
        out.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
      }
  return out;
}

CMatrix unitary_superoperator(const CMatrix& u) {
  return KrausChannel{{u}, 0}.superoperator();
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("density matrix of " +
                                std::to_string(num_qubits) +
                                " qubits is outside the supported range 1.." +
                                std::to_string(kMaxSimulatedQubits));
  }
  rho_ = CMatrix::Zero(static_cast<Eigen::Index>(dim()),
                       static_cast<Eigen::Index>(dim()));
  rho_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_matrix(CMatrix rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("rho must be square");
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < rho.rows()) ++n;
  if ((Eigen::Index{1} << n) != rho.rows()) {
    throw std::invalid_argument("rho dimension is not a power of two");
  }
  DensityMatrix out(n);
  out.rho_ = std::move(rho);
  return out;
}

void DensityMatrix::apply_unitary(const CMatrix& u,
                                  std::span<const std::size_t> qubits) {
  apply_superoperator(unitary_superoperator(u), qubits);
}

void DensityMatrix::apply_channel(const KrausChannel& channel,
                                  std::span<const std::size_t> qubits) {
  if (channel.arity != qubits.size()) {
    throw std::invalid_argument("channel arity does not match qubit count");
  }
  if (channel.completeness_error() > kHermitianTolerance) {
    throw std::invalid_argument("malformed channel: Kraus set incomplete");
  }
  apply_superoperator(channel.superoperator(), qubits);
}

void DensityMatrix::apply_superoperator(const CMatrix& superop,
                                        std::span<const std::size_t> qubits) {
  const std::size_t k = qubits.size();
  const std::size_t local = std::size_t{1} << k;
  if (static_cast<std::size_t>(superop.rows()) != local * local ||
      superop.rows() != superop.cols()) {
    throw std::invalid_argument("superoperator shape does not match qubits");
  }
  std::size_t mask = 0;
  std::vector<std::size_t> offset(local, 0);
  for (std::size_t t = 0; t < k; ++t) {
    if (qubits[t] >= num_qubits_) throw std::out_of_range("qubit index");
    const std::size_t bit = std::size_t{1} << (num_qubits_ - 1 - qubits[t]);
    if (mask & bit) throw std::invalid_argument("repeated qubit");
    mask |= bit;
    for (std::size_t r = 0; r < local; ++r) {
      if (r & (std::size_t{1} << (k - 1 - t))) offset[r] |= bit;
    }
  }
  std::vector<std::size_t> bases;
  bases.reserve(dim() / local);
  for (std::size_t i = 0; i < dim(); ++i) {
    if ((i & mask) == 0) bases.push_back(i);
  }

  const std::vector<SparseEntry> entries = nonzeros(superop);
  const std::size_t block = local * local;
  std::vector<cd> in(block), out(block);
  const Eigen::Index ld = rho_.rows();
  cd* data = rho_.data();  // column major
  for (std::size_t jb : bases) {
    for (std::size_t ib : bases) {
      for (std::size_t r = 0; r < local; ++r)
        for (std::size_t c = 0; c < local; ++c)
          in[r * local + c] =
              data[(ib + offset[r]) + (jb + offset[c]) * static_cast<std::size_t>(ld)];
      std::fill(out.begin(), out.end(), cd{});
      for (const SparseEntry& e : entries) out[e.row] += e.value * in[e.col];
      for (std::size_t r = 0; r < local; ++r)
        for (std::size_t c = 0; c < local; ++c)
          data[(ib + offset[r]) + (jb + offset[c]) * static_cast<std::size_t>(ld)] =
              out[r * local + c];
    }
  }
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::purity() const {
  return (rho_.array() * rho_.transpose().array()).sum().real();
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_valid() const {
  if (hermiticity_error() > kHermitianTolerance) {
    throw std::runtime_error("density matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > kHermitianTolerance) {
    throw std::runtime_error("density matrix trace is not 1");
  }
  if (min_eigenvalue() < -kPsdTolerance) {
    throw std::runtime_error("density matrix is not positive semidefinite");
  }
}

double OutputDistribution::total() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double OutputDistribution::at(const std::string& bits) const {
  if (bits.size() != num_bits) {
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                " != " + std::to_string(num_bits));
  }
  return probs.at(index_of(bits));
}

std::string OutputDistribution::bitstring(std::size_t index,
                                          std::size_t num_bits) {
  std::string s(num_bits, '0');
  for (std::size_t q = 0; q < num_bits; ++q) {
    if (index & (std::size_t{1} << (num_bits - 1 - q))) s[q] = '1';
  }
  return s;
}

std::size_t OutputDistribution::index_of(const std::string& bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be 0/1");
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  return index;
}

const CMatrix& gate_unitary(GateKind kind) {
  static const std::map<GateKind, CMatrix> table = [] {
    std::map<GateKind, CMatrix> t;
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix h(2, 2);
    h << r, r, r, -r;
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    CMatrix sdg(2, 2);
    sdg << 1, 0, 0, cd(0, -1);
    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    t[GateKind::H] = h;
    t[GateKind::X] = x;
    t[GateKind::S_DAG] = sdg;
    t[GateKind::CNOT] = cnot;
    t[GateKind::SWAP] = swap;
    return t;
  }();
  auto it = table.find(kind);
  if (it == table.end()) {
    throw std::invalid_argument(std::string(to_string(kind)) +
                                " is not a unitary gate");
  }
  return it->second;
}

Circuit measure_with_axis(const Circuit& circuit, const GateDurations& durations) {
  Circuit out(circuit.num_qubits(), circuit.label());
  for (const Gate& g : circuit.gates()) {
    if (g.kind != GateKind::MEASURE || g.axis == PauliAxis::Z) {
      out.add(g);
      continue;
    }
    const std::size_t q = g.qubits[0];
    if (g.axis == PauliAxis::Y) out.add(Gate::s_dag(q, durations));
    out.add(Gate::h(q, durations));
    out.add(Gate::measure(q, PauliAxis::Z));
  }
  return out;
}

Circuit expand_preparations(const Circuit& circuit,
                            const GateDurations& durations) {
  Circuit out(circuit.num_qubits(), circuit.label());
  for (const Gate& g : circuit.gates()) {
    if (g.kind != GateKind::PREP) {
      out.add(g);
      continue;
    }
    const std::size_t q = g.qubits[0];
    const bool flip = g.eigenindex == 1;
    switch (g.axis) {
      case PauliAxis::Z:
        if (flip) out.add(Gate::x(q, durations));
        break;
      case PauliAxis::X:
        if (flip) out.add(Gate::x(q, durations));
        out.add(Gate::h(q, durations));
        break;
      case PauliAxis::Y:
        // S_DAG H|0> is the -1 eigenvector; an extra X selects the +1 one.
        if (!flip) out.add(Gate::x(q, durations));
        out.add(Gate::h(q, durations));
        out.add(Gate::s_dag(q, durations));
        break;
    }
  }
  return out;
}

std::vector<Moment> schedule_moments(const Circuit& circuit) {
  std::vector<Moment> moments;
  std::vector<std::size_t> next_free(circuit.num_qubits(), 0);
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const Gate& g = circuit.gates()[i];
    if (g.kind == GateKind::MEASURE) continue;
    if (g.kind == GateKind::PREP) {
      throw std::invalid_argument("expand preparations before scheduling");
    }
    std::size_t slot = 0;
    for (std::size_t q : g.qubits) slot = std::max(slot, next_free[q]);
    if (slot >= moments.size()) moments.resize(slot + 1);
    moments[slot].gate_indices.push_back(i);
    moments[slot].duration_ns = std::max(moments[slot].duration_ns, g.duration_ns);
    for (std::size_t q : g.qubits) next_free[q] = slot + 1;
  }
  return moments;
}

DensityMatrix simulate(const Circuit& circuit,
                       const std::optional<NoiseModel>& noise) {
  const GateDurations durations =
      noise ? noise->gate_durations : GateDurations{};
  const Circuit lowered =
      measure_with_axis(expand_preparations(circuit, durations), durations);
  DensityMatrix rho(lowered.num_qubits());
  if (noise) noise->validate();

  std::map<GateKind, CMatrix> unitary_superops;
  auto superop_of = [&](GateKind kind) -> const CMatrix& {
    auto it = unitary_superops.find(kind);
    if (it == unitary_superops.end()) {
      it = unitary_superops.emplace(kind, unitary_superoperator(gate_unitary(kind)))
               .first;
    }
    return it->second;
  };
  const bool gate_noise = noise && noise->enabled.gate;
  const bool idle_noise = noise && noise->enabled.idle;
  CMatrix depol1, depol2;
  if (gate_noise) {
    depol1 = depolarizing_channel(noise->depol_1q, 1).superoperator();
    depol2 = depolarizing_channel(noise->depol_2q, 2).superoperator();
  }
  std::map<double, CMatrix> idle_superops;
  auto idle_superop = [&](double ns) -> const CMatrix& {
    auto it = idle_superops.find(ns);
    if (it == idle_superops.end()) {
      const CMatrix ad =
          amplitude_damping_channel(ns, noise->t1_us).superoperator();
      const CMatrix pd =
          dephasing_channel(ns, noise->t1_us, noise->t2_us).superoperator();
      it = idle_superops.emplace(ns, pd * ad).first;
    }
    return it->second;
  };

  std::vector<bool> touched(lowered.num_qubits(), false);
  for (const Moment& moment : schedule_moments(lowered)) {
    std::vector<bool> busy(lowered.num_qubits(), false);
    for (std::size_t gi : moment.gate_indices) {
      const Gate& g = lowered.gates()[gi];
      rho.apply_superoperator(superop_of(g.kind), g.qubits);
      for (std::size_t q : g.qubits) busy[q] = touched[q] = true;
      if (!gate_noise) continue;
      if (g.arity() == 1) {
        rho.apply_superoperator(depol1, g.qubits);
      } else {
        // SWAP carries the error budget of its three-CNOT implementation.
        const int repeats = g.kind == GateKind::SWAP ? 3 : 1;
        for (int r = 0; r < repeats; ++r) rho.apply_superoperator(depol2, g.qubits);
      }
    }
    if (!idle_noise || moment.duration_ns <= 0.0) continue;
    for (std::size_t q = 0; q < lowered.num_qubits(); ++q) {
      // Untouched wires are still exactly |0>, which idle noise leaves fixed.
      if (busy[q] || !touched[q]) continue;
      const std::size_t target[] = {q};
      rho.apply_superoperator(idle_superop(moment.duration_ns), target);
    }
  }
  return rho;
}

OutputDistribution measure_distribution(const DensityMatrix& rho,
                                        const std::optional<ReadoutPovm>& readout) {
  OutputDistribution out{rho.num_qubits(), std::vector<double>(rho.dim())};
  for (std::size_t i = 0; i < rho.dim(); ++i) out.probs[i] = rho(i, i).real();
  if (!readout || readout->gamma == 0.0) return out;
  const CMatrix e = readout->effect();
  if (std::abs(e(0, 1)) > 0.0 || std::abs(e(1, 0)) > 0.0) {
    throw std::logic_error("readout effects must be diagonal");
  }
  // P(report 1 | state 0) = E00, P(report 1 | state 1) = E11.
  const double p1_given0 = e(0, 0).real();
  const double p1_given1 = e(1, 1).real();
  const std::size_t n = rho.num_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      if (i & bit) continue;
      const double p0 = out.probs[i];
      const double p1 = out.probs[i | bit];
      out.probs[i] = (1.0 - p1_given0) * p0 + (1.0 - p1_given1) * p1;
      out.probs[i | bit] = p1_given0 * p0 + p1_given1 * p1;
    }
  }
  return out;
}

std::vector<std::uint64_t> sample_counts(const OutputDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  std::vector<double> weights(dist.probs.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = std::max(0.0, dist.probs[i]);
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<std::uint64_t> counts(dist.probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[pick(rng)];
  return counts;
}

OutputDistribution counts_to_distribution(const std::vector<std::uint64_t>& counts,
                                          std::size_t num_bits) {
  if (counts.size() != (std::size_t{1} << num_bits)) {
    throw std::invalid_argument("histogram length does not match bit count");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("empty histogram");
  OutputDistribution out{num_bits, std::vector<double>(counts.size())};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

nlohmann::json distribution_to_json(const OutputDistribution& dist) {
  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (dist.probs[i] != 0.0) {
      probs[OutputDistribution::bitstring(i, dist.num_bits)] = dist.probs[i];
    }
  }
  return {{"num_bits", dist.num_bits}, {"probabilities", probs}};
}

OutputDistribution distribution_from_json(const nlohmann::json& j) {
  const std::size_t n = j.at("num_bits").get<std::size_t>();
  OutputDistribution out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (const auto& [bits, p] : j.at("probabilities").items()) {
    if (bits.size() != n) throw std::invalid_argument("bitstring length mismatch");
    out.probs[OutputDistribution::index_of(bits)] = p.get<double>();
  }
  return out;
}

}  // namespace qdc
