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
#include <span>
#include <vector>

namespace qdc {

/// Dense real tensor whose indices carry integer labels. Data is row-major:
/// the first label varies slowest. Two tensors sharing a label share that
/// index; a label may be shared by more than two tensors (hyperedge).
struct Tensor {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
  std::vector<double> data;

  Tensor() : data{0.0} {}
  Tensor(std::vector<int> labels, std::vector<std::size_t> dims);

  static Tensor scalar(double value);

  std::size_t rank() const { return labels.size(); }
  std::size_t size() const { return data.size(); }
  /// Position of `label` among the indices, or rank() when absent.
  std::size_t axis_of(int label) const;
  bool has(int label) const { return axis_of(label) < rank(); }
  std::size_t dim_of(int label) const;

  double& at(std::span<const std::size_t> index);
  double at(std::span<const std::size_t> index) const;
};

/// Multiplications spent by contract(a, b, keep): one per point of the joint
/// index space (union of both label sets).
std::uint64_t contraction_cost(const Tensor& a, const Tensor& b);

/// Pairwise contraction. Shared labels listed in `keep` stay open (they are
/// still needed elsewhere); every other shared label is summed. Output
/// labels: a's open labels in order, then b's new ones.
Tensor contract(const Tensor& a, const Tensor& b, std::span<const int> keep,
                std::uint64_t* multiplications = nullptr);

/// Fixes `label` to `value`, dropping the index.
Tensor slice(const Tensor& t, int label, std::size_t value);

/// Reorders indices to `order` (a permutation of t.labels).
Tensor permute(const Tensor& t, std::span<const int> order);

}  // namespace qdc
