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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/noise.hpp"
#include "qdc/pauli.hpp"

namespace qdc {

/// Largest register the dense simulator accepts.
inline constexpr std::size_t kMaxSimulatedQubits = 12;

/// Slack on the smallest eigenvalue before a state counts as non-PSD.
inline constexpr double kPsdTolerance = 1e-9;

/// Dense 2^n x 2^n density matrix. Basis index i is big-endian: qubit 0 is
/// the most significant bit.
class DensityMatrix {
 public:
  /// |0...0><0...0|.
  explicit DensityMatrix(std::size_t num_qubits);
  static DensityMatrix from_matrix(CMatrix rho);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  const CMatrix& matrix() const { return rho_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  void apply_unitary(const CMatrix& u, std::span<const std::size_t> qubits);
  void apply_channel(const KrausChannel& channel,
                     std::span<const std::size_t> qubits);
  /// `superop` uses the layout of KrausChannel::superoperator().
  void apply_superoperator(const CMatrix& superop,
                           std::span<const std::size_t> qubits);

  double trace() const;
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Throws std::runtime_error if the Hermitian, unit-trace or PSD invariant
  /// is broken beyond tolerance.
  void check_valid() const;

 private:
  std::size_t num_qubits_;
  CMatrix rho_;
};

struct OutputDistribution {
  std::size_t num_bits = 0;
  std::vector<double> probs;

  double total() const;
  /// Probability of a bitstring written qubit 0 first, e.g. "0110".
  double at(const std::string& bits) const;
  static std::string bitstring(std::size_t index, std::size_t num_bits);
  static std::size_t index_of(const std::string& bits);
};

/// Matrix of a unitary gate kind (H, X, S_DAG, CNOT, SWAP). For two-qubit
/// gates the first listed qubit is the more significant local bit.
const CMatrix& gate_unitary(GateKind kind);

/// Rewrites MEASURE(X) -> H, MEASURE(Z) and MEASURE(Y) -> S_DAG, H,
/// MEASURE(Z). Inserted rotations take one-qubit durations from `durations`.
Circuit measure_with_axis(const Circuit& circuit,
                          const GateDurations& durations = {});

/// Rewrites PREP(axis, b) into gates acting on |0>:
/// Z0: -, Z1: X, X0: H, X1: X H, Y0: X H S_DAG, Y1: H S_DAG.
Circuit expand_preparations(const Circuit& circuit,
                            const GateDurations& durations = {});

/// ASAP time slice: gates on disjoint qubits, lasting as long as its longest
/// gate. MEASURE pseudo-gates are not scheduled.
struct Moment {
  std::vector<std::size_t> gate_indices;
  double duration_ns = 0.0;
};
std::vector<Moment> schedule_moments(const Circuit& circuit);

/// Runs `circuit` from |0...0>. PREP and non-Z MEASURE gates are lowered
/// first. Per moment: each gate's unitary then its depolarizing channel,
/// then amplitude damping and dephasing on every idle qubit that has already
/// been touched.
DensityMatrix simulate(const Circuit& circuit,
                       const std::optional<NoiseModel>& noise = std::nullopt);

/// Z-basis outcome probabilities; with a readout POVM every qubit is read
/// through {I - E, E}.
OutputDistribution measure_distribution(
    const DensityMatrix& rho,
    const std::optional<ReadoutPovm>& readout = std::nullopt);

/// Multinomial histogram with `shots` draws, reproducible per seed.
std::vector<std::uint64_t> sample_counts(const OutputDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

OutputDistribution counts_to_distribution(
    const std::vector<std::uint64_t>& counts, std::size_t num_bits);

/// {"num_bits": n, "probabilities": {"0101": p, ...}}, nonzero entries only.
nlohmann::json distribution_to_json(const OutputDistribution& dist);
OutputDistribution distribution_from_json(const nlohmann::json& j);

}  // namespace qdc
