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

#include <gtest/gtest.h>

#include <random>

#include "qdc/tensor.hpp"

namespace qdc {
namespace {

Tensor random_tensor(std::vector<int> labels, std::vector<std::size_t> dims,
                     std::mt19937_64& rng) {
  Tensor t(std::move(labels), std::move(dims));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& x : t.data) x = u(rng);
  return t;
}

TEST(Tensor, MatrixProduct) {
  std::mt19937_64 rng(1);
  const Tensor a = random_tensor({1, 2}, {3, 4}, rng);
  const Tensor b = random_tensor({2, 3}, {4, 5}, rng);
  std::uint64_t mults = 0;
  const Tensor c = contract(a, b, {}, &mults);
  EXPECT_EQ(mults, 60u);
  EXPECT_EQ(contraction_cost(a, b), 60u);
  ASSERT_EQ(c.labels, (std::vector<int>{1, 3}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 5; ++k) {
      double expected = 0.0;
      for (std::size_t j = 0; j < 4; ++j) expected += a.data[i * 4 + j] * b.data[j * 5 + k];
      EXPECT_NEAR(c.data[i * 5 + k], expected, 1e-14);
    }
}

TEST(Tensor, KeptSharedLabelIsDiagonal) {
  std::mt19937_64 rng(2);
  const Tensor a = random_tensor({7, 8}, {3, 2}, rng);
  const Tensor b = random_tensor({7, 9}, {3, 2}, rng);
  const int keep[] = {7};
  const Tensor c = contract(a, b, keep);
  ASSERT_EQ(c.labels, (std::vector<int>{7, 8, 9}));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) {
        EXPECT_NEAR(c.data[(x * 2 + y) * 2 + z], a.data[x * 2 + y] * b.data[x * 2 + z], 1e-15);
      }
}

TEST(Tensor, FullContractionToScalar) {
  std::mt19937_64 rng(3);
  const Tensor a = random_tensor({1, 2, 3}, {2, 3, 2}, rng);
  const Tensor b = random_tensor({3, 1, 2}, {2, 2, 3}, rng);
  const Tensor c = contract(a, b, {});
  EXPECT_EQ(c.rank(), 0u);
  double expected = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        expected += a.data[(i * 3 + j) * 2 + k] * b.data[(k * 2 + i) * 3 + j];
  EXPECT_NEAR(c.data[0], expected, 1e-14);
}

TEST(Tensor, SliceAndPermute) {
  std::mt19937_64 rng(4);
  const Tensor t = random_tensor({1, 2, 3}, {2, 3, 4}, rng);
  const Tensor s = slice(t, 2, 1);
  ASSERT_EQ(s.labels, (std::vector<int>{1, 3}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      EXPECT_EQ(s.data[i * 4 + k], t.data[(i * 3 + 1) * 4 + k]);
  const int order[] = {3, 1, 2};
  const Tensor p = permute(t, order);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        EXPECT_EQ(p.data[(k * 2 + i) * 3 + j], t.data[(i * 3 + j) * 4 + k]);
}

TEST(Tensor, RejectsBadShapes) {
  EXPECT_THROW(Tensor({1, 1}, {2, 2}), std::invalid_argument);
  EXPECT_THROW(Tensor({1}, {2, 2}), std::invalid_argument);
  const Tensor a({1}, {2}), b({1}, {3});
  EXPECT_THROW(contract(a, b, {}), std::invalid_argument);
  EXPECT_THROW(slice(a, 5, 0), std::out_of_range);
}

}  // namespace
}  // namespace qdc
