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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdc/circuit.hpp"

namespace qdc {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Hermiticity and Kraus-completeness tolerance.
inline constexpr double kHermitianTolerance = 1e-10;
/// Tolerance for exact algebraic identities.
inline constexpr double kIdentityTolerance = 1e-12;

/// Single-qubit Pauli matrix: 0=I, 1=X, 2=Y, 3=Z.
const CMatrix& pauli_matrix(int which);

/// Pauli index (1..3) of a measurement axis.
inline int pauli_index(PauliAxis axis) { return static_cast<int>(axis) + 1; }

/// Generalized Pauli string. `index` is a base-4 number whose most significant
/// digit belongs to qubit 0, so the Kronecker order matches the big-endian
/// bitstring order used everywhere else.
CMatrix pauli_string_matrix(std::size_t index, std::size_t num_qubits);

/// Coordinates of a Hermitian operator in the Pauli basis,
/// op = sum_a coords[a] P_a with coords[a] = Tr[P_a op] / 2^n.
struct PauliCoords {
  std::size_t num_qubits = 0;
  Eigen::VectorXd coords;

  CMatrix to_matrix() const;
};

struct Ptm {
  std::size_t num_qubits = 0;
  RMatrix matrix;

  PauliCoords apply(const PauliCoords& in) const;
  /// PTM of (this after first).
  Ptm after(const Ptm& first) const;
};

/// Throws std::invalid_argument if `op` is not square with a power-of-two
/// dimension or is not Hermitian within kHermitianTolerance.
PauliCoords pauli_decompose(const CMatrix& op);

/// max |sum_k K^dag K - I|. Throws on empty or ragged Kraus sets.
double kraus_completeness_error(std::span<const CMatrix> kraus);

/// [R]_ab = Tr[P_a O(P_b)] / d. Rejects incomplete Kraus sets.
Ptm ptm_of_channel(std::span<const CMatrix> kraus);

/// <<A|B>> = sum_a A_a B_a (coordinates are real for Hermitian operators).
double scalar_product(const PauliCoords& a, const PauliCoords& b);

enum class GammaVariant { Tilde, Bell };

/// Weights joining the two sides of a cut wire, indexed (axis, b, b').
/// Tilde pairs prepared eigenstates with measurement outcomes; Bell pairs a
/// Bell-gadget ancilla outcome with a measurement outcome.
struct GammaTensor {
  GammaVariant variant = GammaVariant::Tilde;
  std::array<std::array<std::array<double, 2>, 2>, 3> values{};

  static GammaTensor tilde();
  static GammaTensor bell();

  double operator()(PauliAxis axis, int b, int b_prime) const {
    return values[static_cast<int>(axis)][b][b_prime];
  }
  double& at(PauliAxis axis, int b, int b_prime) {
    return values[static_cast<int>(axis)][b][b_prime];
  }
};

/// Eigenstate `eigenindex` of sigma_axis; eigenindex 0 is the +1 eigenvector.
struct PauliEigenstate {
  PauliAxis axis = PauliAxis::Z;
  int eigenindex = 0;
  Eigen::Vector2cd ket;
  CMatrix density_matrix;
  PauliCoords coords;

  static PauliEigenstate of(PauliAxis axis, int eigenindex);
};

/// Largest entrywise deviation between the one-qubit identity PTM and
/// sum_{a,b,b'} g_a^{bb'} |sigma_a^b>><<sigma_a^b'|.
double identity_decomposition_error(const GammaTensor& gamma);

/// True when the decomposition above reproduces the identity within
/// kIdentityTolerance.
bool identity_decomposition_check(
    const GammaTensor& gamma = GammaTensor::tilde());

}  // namespace qdc
