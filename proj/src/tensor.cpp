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

#include "qdc/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qdc {
namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

struct JointSpace {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
};

JointSpace joint_space(const Tensor& a, const Tensor& b) {
  JointSpace j{a.labels, a.dims};
  for (std::size_t i = 0; i < b.rank(); ++i) {
    const std::size_t pos = a.axis_of(b.labels[i]);
    if (pos < a.rank()) {
      if (a.dims[pos] != b.dims[i]) {
        throw std::invalid_argument("label " + std::to_string(b.labels[i]) +
                                    " has mismatched dimensions");
      }
      continue;
    }
    j.labels.push_back(b.labels[i]);
    j.dims.push_back(b.dims[i]);
  }
  return j;
}

}  // namespace

Tensor::Tensor(std::vector<int> labels_in, std::vector<std::size_t> dims_in)
    : labels(std::move(labels_in)), dims(std::move(dims_in)) {
  if (labels.size() != dims.size()) {
    throw std::invalid_argument("tensor labels and dims differ in length");
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) {
        throw std::invalid_argument("repeated tensor label " +
                                    std::to_string(labels[i]));
      }
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  data.assign(n, 0.0);
}

Tensor Tensor::scalar(double value) {
  Tensor t;
  t.data[0] = value;
  return t;
}

std::size_t Tensor::axis_of(int label) const {
  return static_cast<std::size_t>(
      std::find(labels.begin(), labels.end(), label) - labels.begin());
}

std::size_t Tensor::dim_of(int label) const {
  const std::size_t a = axis_of(label);
  if (a == rank()) throw std::out_of_range("no label " + std::to_string(label));
  return dims[a];
}

double& Tensor::at(std::span<const std::size_t> index) {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < rank(); ++i) offset = offset * dims[i] + index[i];
  return data[offset];
}

double Tensor::at(std::span<const std::size_t> index) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < rank(); ++i) offset = offset * dims[i] + index[i];
  return data[offset];
}

std::uint64_t contraction_cost(const Tensor& a, const Tensor& b) {
  std::uint64_t cost = 1;
  for (std::size_t d : joint_space(a, b).dims) cost *= d;
  return cost;
}

Tensor contract(const Tensor& a, const Tensor& b, std::span<const int> keep,
                std::uint64_t* multiplications) {
  const JointSpace joint = joint_space(a, b);
  auto kept = [&](int label) {
    if (!a.has(label) || !b.has(label)) return true;
    return std::find(keep.begin(), keep.end(), label) != keep.end();
  };
  std::vector<int> out_labels;
  std::vector<std::size_t> out_dims;
  for (std::size_t i = 0; i < joint.labels.size(); ++i) {
    if (kept(joint.labels[i])) {
      out_labels.push_back(joint.labels[i]);
      out_dims.push_back(joint.dims[i]);
    }
  }
  Tensor out(out_labels, out_dims);

  // Stride of each joint index inside a, b and the output (0 when absent).
  const std::size_t r = joint.labels.size();
  const auto sa = strides_of(a.dims), sb = strides_of(b.dims),
             so = strides_of(out.dims);
  std::vector<std::size_t> stride_a(r, 0), stride_b(r, 0), stride_o(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const int l = joint.labels[i];
    if (std::size_t p = a.axis_of(l); p < a.rank()) stride_a[i] = sa[p];
    if (std::size_t p = b.axis_of(l); p < b.rank()) stride_b[i] = sb[p];
    if (std::size_t p = out.axis_of(l); p < out.rank()) stride_o[i] = so[p];
  }
  std::uint64_t count = 1;
  for (std::size_t d : joint.dims) count *= d;
  std::vector<std::size_t> idx(r, 0);
  std::size_t ia = 0, ib = 0, io = 0;
  for (std::uint64_t step = 0; step < count; ++step) {
    out.data[io] += a.data[ia] * b.data[ib];
    for (std::size_t k = r; k-- > 0;) {
      if (++idx[k] < joint.dims[k]) {
        ia += stride_a[k];
        ib += stride_b[k];
        io += stride_o[k];
        break;
      }
      ia -= stride_a[k] * (joint.dims[k] - 1);
      ib -= stride_b[k] * (joint.dims[k] - 1);
      io -= stride_o[k] * (joint.dims[k] - 1);
      idx[k] = 0;
    }
  }
  if (multiplications) *multiplications += count;
  return out;
}

Tensor slice(const Tensor& t, int label, std::size_t value) {
  const std::size_t axis = t.axis_of(label);
  if (axis == t.rank()) throw std::out_of_range("no label " + std::to_string(label));
  if (value >= t.dims[axis]) throw std::out_of_range("slice value out of range");
  std::vector<int> labels = t.labels;
  std::vector<std::size_t> dims = t.dims;
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(axis));
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(axis));
  Tensor out(labels, dims);
  std::size_t inner = 1;
  for (std::size_t i = axis + 1; i < t.rank(); ++i) inner *= t.dims[i];
  const std::size_t outer = t.size() / (inner * t.dims[axis]);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i)
      out.data[o * inner + i] = t.data[(o * t.dims[axis] + value) * inner + i];
  return out;
}

Tensor permute(const Tensor& t, std::span<const int> order) {
  if (order.size() != t.rank()) throw std::invalid_argument("bad permutation");
  std::vector<std::size_t> dims;
  for (int l : order) dims.push_back(t.dim_of(l));
  Tensor out(std::vector<int>(order.begin(), order.end()), dims);
  const auto st = strides_of(t.dims);
  std::vector<std::size_t> src_stride;
  for (int l : order) src_stride.push_back(st[t.axis_of(l)]);
  std::vector<std::size_t> idx(t.rank(), 0);
  for (std::size_t o = 0; o < out.size(); ++o) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) src += idx[i] * src_stride[i];
    out.data[o] = t.data[src];
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace qdc
