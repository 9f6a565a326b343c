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

#include "qdc/pauli.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qdc {
namespace {

using cd = std::complex<double>;

std::size_t qubits_for_dimension(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if (dim <= 0 || (Eigen::Index{1} << n) != dim) {
    throw std::invalid_argument("operator dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
  return n;
}

std::size_t pow4(std::size_t n) { return std::size_t{1} << (2 * n); }

// Tr[A B] without forming the product.
cd trace_of_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

}  // namespace

const CMatrix& pauli_matrix(int which) {
  static const std::array<CMatrix, 4> table = [] {
    std::array<CMatrix, 4> t;
    for (auto& m : t) m = CMatrix::Zero(2, 2);
    t[0] << 1, 0, 0, 1;
    t[1] << 0, 1, 1, 0;
    t[2] << 0, cd(0, -1), cd(0, 1), 0;
    t[3] << 1, 0, 0, -1;
    return t;
  }();
  if (which < 0 || which > 3) throw std::out_of_range("Pauli index");
  return table[which];
}

CMatrix pauli_string_matrix(std::size_t index, std::size_t num_qubits) {
  if (index >= pow4(num_qubits)) throw std::out_of_range("Pauli string index");
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < num_qubits; ++k) {
    const int digit =
        static_cast<int>((index >> (2 * (num_qubits - 1 - k))) & 3u);
    const CMatrix& p = pauli_matrix(digit);
    CMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(2 * i, 2 * j, 2, 2) = out(i, j) * p;
      }
    }
    out = std::move(next);
  }
  return out;
}

CMatrix PauliCoords::to_matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < coords.size(); ++a) {
    if (coords[a] != 0.0) {
      out += coords[a] * pauli_string_matrix(static_cast<std::size_t>(a),
                                             num_qubits);
    }
  }
  return out;
}

PauliCoords Ptm::apply(const PauliCoords& in) const {
  if (in.num_qubits != num_qubits) {
    throw std::invalid_argument("PTM and coordinates disagree on qubit count");
  }
  return {num_qubits, matrix * in.coords};
}

Ptm Ptm::after(const Ptm& first) const {
  if (first.num_qubits != num_qubits) {
    throw std::invalid_argument("cannot compose PTMs of different width");
  }
  return {num_qubits, matrix * first.matrix};
}

PauliCoords pauli_decompose(const CMatrix& op) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("Pauli decomposition needs a square operator");
  }
  const std::size_t n = qubits_for_dimension(op.rows());
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument("operator is not Hermitian");
  }
  const double d = static_cast<double>(op.rows());
  PauliCoords out{n, Eigen::VectorXd(pow4(n))};
  for (std::size_t a = 0; a < pow4(n); ++a) {
    out.coords[a] = trace_of_product(pauli_string_matrix(a, n), op).real() / d;
  }
  return out;
}

double kraus_completeness_error(std::span<const CMatrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index dim = kraus.front().rows();
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const CMatrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("Kraus operators must share one square shape");
    }
    sum += k.adjoint() * k;
  }
  return (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

Ptm ptm_of_channel(std::span<const CMatrix> kraus) {
  if (kraus_completeness_error(kraus) > kHermitianTolerance) {
    throw std::invalid_argument("Kraus operators are not trace preserving");
  }
  const std::size_t n = qubits_for_dimension(kraus.front().rows());
  const std::size_t count = pow4(n);
  const double d = static_cast<double>(kraus.front().rows());
  std::vector<CMatrix> paulis;
  paulis.reserve(count);
  for (std::size_t a = 0; a < count; ++a) {
    paulis.push_back(pauli_string_matrix(a, n));
  }
  Ptm out{n, RMatrix::Zero(count, count)};
  for (std::size_t b = 0; b < count; ++b) {
    CMatrix image = CMatrix::Zero(kraus.front().rows(), kraus.front().cols());
    for (const CMatrix& k : kraus) image += k * paulis[b] * k.adjoint();
    for (std::size_t a = 0; a < count; ++a) {
      out.matrix(a, b) = trace_of_product(paulis[a], image).real() / d;
    }
  }
  return out;
}

double scalar_product(const PauliCoords& a, const PauliCoords& b) {
  if (a.num_qubits != b.num_qubits || a.coords.size() != b.coords.size()) {
    throw std::invalid_argument("scalar product of mismatched widths");
  }
  return a.coords.dot(b.coords);
}

GammaTensor GammaTensor::tilde() {
  GammaTensor g{GammaVariant::Tilde, {}};
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      const double delta = b == bp ? 1.0 : 0.0;
      g.at(PauliAxis::X, b, bp) = 2 * delta - 1;
      g.at(PauliAxis::Y, b, bp) = 2 * delta - 1;
      g.at(PauliAxis::Z, b, bp) = 2 * delta;
    }
  }
  return g;
}

GammaTensor GammaTensor::bell() {
  GammaTensor g{GammaVariant::Bell, {}};
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      const double delta = b == bp ? 1.0 : 0.0;
      g.at(PauliAxis::X, b, bp) = 2 * delta - 1;
      g.at(PauliAxis::Y, b, bp) = -(2 * delta - 1);
      g.at(PauliAxis::Z, b, bp) = 2 * delta;
    }
  }
  return g;
}

PauliEigenstate PauliEigenstate::of(PauliAxis axis, int eigenindex) {
  if (eigenindex != 0 && eigenindex != 1) {
    throw std::invalid_argument("eigenindex must be 0 or 1");
  }
  const double r = 1.0 / std::sqrt(2.0);
  const double sign = eigenindex == 0 ? 1.0 : -1.0;
  PauliEigenstate s;
  s.axis = axis;
  s.eigenindex = eigenindex;
  switch (axis) {
    case PauliAxis::X:
      s.ket << r, sign * r;
      break;
    case PauliAxis::Y:
      s.ket << r, cd(0, sign * r);
      break;
    case PauliAxis::Z:
      s.ket << (eigenindex == 0 ? 1.0 : 0.0), (eigenindex == 0 ? 0.0 : 1.0);
      break;
  }
  s.density_matrix = s.ket * s.ket.adjoint();
  s.coords = pauli_decompose(s.density_matrix);
  return s;
}

double identity_decomposition_error(const GammaTensor& gamma) {
  RMatrix sum = RMatrix::Zero(4, 4);
  for (PauliAxis axis : kAllAxes) {
    for (int b = 0; b < 2; ++b) {
      const Eigen::VectorXd& ket = PauliEigenstate::of(axis, b).coords.coords;
      for (int bp = 0; bp < 2; ++bp) {
        const Eigen::VectorXd& bra =
            PauliEigenstate::of(axis, bp).coords.coords;
        sum += gamma(axis, b, bp) * ket * bra.transpose();
      }
    }
  }
  return (sum - RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff();
}

bool identity_decomposition_check(const GammaTensor& gamma) {
  return identity_decomposition_error(gamma) < kIdentityTolerance;
}

}  // namespace qdc
