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

#include <cmath>
#include <random>

#include "oracles/noisy.hpp"
#include "oracles/statevector.hpp"
#include "qdc/density.hpp"
#include "qdc/noise.hpp"

namespace qdc {
namespace {

Circuit random_unitary_circuit(std::size_t n, std::size_t gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_int_distribution<std::size_t> pick_q(0, n - 1);
  std::uniform_int_distribution<int> pick_kind(0, 4);
  for (std::size_t i = 0; i < gates; ++i) {
    const std::size_t a = pick_q(rng);
    std::size_t b = pick_q(rng);
    while (b == a) b = pick_q(rng);
    switch (pick_kind(rng)) {
      case 0: c.add(Gate::h(a)); break;
      case 1: c.add(Gate::x(a)); break;
      case 2: c.add(Gate::s_dag(a)); break;
      case 3: c.add(Gate::cnot(a, b)); break;
      default: c.add(Gate::swap(a, b)); break;
    }
  }
  return c;
}

TEST(Simulate, HadamardOnZero) {
  Circuit c(1);
  c.add(Gate::h(0));
  const DensityMatrix rho = simulate(c);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(rho(i, j).real(), 0.5, 1e-15);
}

TEST(Simulate, GhzFourIsPureAndMatchesStatevector) {
  const Circuit c = build_ghz_circuit(4);
  const DensityMatrix rho = simulate(c);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  const auto expected = oracle::run_statevector(c);
  const OutputDistribution d = measure_distribution(rho);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(d.probs[i], expected[i], 1e-12);
}

TEST(Simulate, AmplitudeDampingAfterX) {
  Circuit c(1);
  c.add(Gate::x(0));
  DensityMatrix rho = simulate(c);
  const std::size_t q[] = {0};
  rho.apply_channel(amplitude_damping_with_probability(0.5), q);
  EXPECT_NEAR(measure_distribution(rho).probs[1], 0.5, 1e-15);
}

TEST(Simulate, RandomCircuitsMatchStatevector) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 8; ++n) {
    const Circuit c = random_unitary_circuit(n, 6 * n, rng);
    const auto expected = oracle::run_statevector(c);
    const OutputDistribution d = measure_distribution(simulate(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      worst = std::max(worst, std::abs(d.probs[i] - expected[i]));
    }
    EXPECT_LT(worst, 1e-12) << "n=" << n;
  }
}

TEST(Simulate, NoisyMatchesDenseKrausOracle) {
  std::mt19937_64 rng(23);
  const NoiseModel m = johannesburg_default();
  for (std::size_t n = 2; n <= 4; ++n) {
    const Circuit c = random_unitary_circuit(n, 5 * n, rng);
    const CMatrix expected = oracle::noisy_density(c, m);
    const DensityMatrix rho = simulate(c, m);
    EXPECT_LT((rho.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
  }
  const Circuit ghz = build_ghz_circuit(4);
  EXPECT_LT((simulate(ghz, m).matrix() - oracle::noisy_density(ghz, m)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simulate, NoisyStatesStayPhysical) {
  std::mt19937_64 rng(29);
  NoiseModel m = johannesburg_default();
  m.depol_1q = 0.05;
  m.depol_2q = 0.1;
  m.t1_us = 1.0;
  m.t2_us = 1.5;
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = random_unitary_circuit(2 + trial % 4, 20, rng);
    const DensityMatrix rho = simulate(c, m);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-9);
    EXPECT_LT(rho.hermiticity_error(), 1e-10);
    EXPECT_GT(rho.min_eigenvalue(), -1e-9);
    EXPECT_NO_THROW(rho.check_valid());
  }
}

TEST(Simulate, RejectsOversizeRegisterAndBadChannels) {
  EXPECT_THROW(simulate(Circuit(kMaxSimulatedQubits + 1)), std::invalid_argument);
  DensityMatrix rho(1);
  const std::size_t q[] = {0};
  KrausChannel bad{{0.5 * CMatrix::Identity(2, 2)}, 1};
  EXPECT_THROW(rho.apply_channel(bad, q), std::invalid_argument);
}

TEST(Measure, BasisStates) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(1, 1) = 1.0;
  const OutputDistribution d = measure_distribution(DensityMatrix::from_matrix(m));
  EXPECT_DOUBLE_EQ(d.at("01"), 1.0);

  CMatrix one = CMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const OutputDistribution noisy =
      measure_distribution(DensityMatrix::from_matrix(one), ReadoutPovm{0.041});
  EXPECT_NEAR(noisy.at("1"), 0.959, 1e-15);
  EXPECT_NEAR(noisy.at("0"), 0.041, 1e-15);
}

TEST(Measure, BellState) {
  Circuit c(2);
  c.add(Gate::h(0)).add(Gate::cnot(0, 1));
  const OutputDistribution d = measure_distribution(simulate(c));
  EXPECT_NEAR(d.at("00"), 0.5, 1e-15);
  EXPECT_NEAR(d.at("11"), 0.5, 1e-15);
  EXPECT_NEAR(d.at("01") + d.at("10"), 0.0, 1e-15);
}

TEST(Measure, ReadoutIsTensorProductPovm) {
  std::mt19937_64 rng(31);
  const Circuit c = random_unitary_circuit(3, 12, rng);
  const DensityMatrix rho = simulate(c);
  const ReadoutPovm povm{0.2};
  const OutputDistribution d = measure_distribution(rho, povm);
  const CMatrix effects[] = {povm.complement(), povm.effect()};
  for (std::size_t i = 0; i < 8; ++i) {
    CMatrix pi = CMatrix::Ones(1, 1);
    for (std::size_t q = 0; q < 3; ++q) {
      const CMatrix& e = effects[(i >> (2 - q)) & 1U];
      CMatrix next(pi.rows() * 2, pi.cols() * 2);
      for (Eigen::Index r = 0; r < pi.rows(); ++r)
        for (Eigen::Index s = 0; s < pi.cols(); ++s) next.block(2 * r, 2 * s, 2, 2) = pi(r, s) * e;
      pi = next;
    }
    EXPECT_NEAR(d.probs[i], (pi * rho.matrix()).trace().real(), 1e-14);
  }
}

TEST(Sampling, Contract) {
  const OutputDistribution det{2, {0.0, 0.0, 1.0, 0.0}};
  const auto counts = sample_counts(det, 1000, 1);
  EXPECT_EQ(counts[2], 1000u);

  const OutputDistribution uniform{1, {0.5, 0.5}};
  const auto c = sample_counts(uniform, 8192, 42);
  EXPECT_EQ(c[0] + c[1], 8192u);
  const double sigma = std::sqrt(8192 * 0.25);
  EXPECT_LT(std::abs(static_cast<double>(c[0]) - 4096.0), 5 * sigma);
  EXPECT_EQ(sample_counts(uniform, 8192, 42), c);
  EXPECT_THROW(sample_counts(uniform, 0, 1), std::invalid_argument);

  const OutputDistribution back = counts_to_distribution(c, 1);
  EXPECT_NEAR(back.total(), 1.0, 1e-15);
}

TEST(MeasureWithAxis, Rewrites) {
  Circuit c(3);
  c.add(Gate::measure(0, PauliAxis::X))
      .add(Gate::measure(1, PauliAxis::Y))
      .add(Gate::measure(2, PauliAxis::Z));
  const Circuit r = measure_with_axis(c);
  ASSERT_EQ(r.gates().size(), 6u);
  EXPECT_EQ(r.gates()[0].kind, GateKind::H);
  EXPECT_EQ(r.gates()[2].kind, GateKind::S_DAG);
  EXPECT_EQ(r.gates()[3].kind, GateKind::H);
  EXPECT_EQ(r.gates()[0].duration_ns, 50.0);
  for (const Gate& g : r.gates()) {
    if (g.kind == GateKind::MEASURE) EXPECT_EQ(g.axis, PauliAxis::Z);
  }
}

TEST(MeasureWithAxis, PlusStateAndZeroState) {
  Circuit plus(1);
  plus.add(Gate::h(0)).add(Gate::measure(0, PauliAxis::X));
  EXPECT_NEAR(measure_distribution(simulate(plus)).at("0"), 1.0, 1e-15);
  Circuit zero(1);
  zero.add(Gate::measure(0, PauliAxis::Y));
  const OutputDistribution d = measure_distribution(simulate(zero));
  EXPECT_NEAR(d.at("0"), 0.5, 1e-15);
  EXPECT_NEAR(d.at("1"), 0.5, 1e-15);
}

TEST(MeasureWithAxis, PrepareThenMeasureReturnsEigenindex) {
  for (PauliAxis axis : kAllAxes)
    for (int b = 0; b < 2; ++b) {
      Circuit c(1);
      c.add(Gate::prep(0, axis, b)).add(Gate::measure(0, axis));
      const OutputDistribution d = measure_distribution(simulate(c));
      EXPECT_NEAR(d.probs[b], 1.0, 1e-14) << to_string(axis) << b;
      const auto ref = oracle::run_statevector(c);
      EXPECT_NEAR(ref[b], 1.0, 1e-14);
    }
}

TEST(ExpandPreparations, MatchesEigenstates) {
  for (PauliAxis axis : kAllAxes)
    for (int b = 0; b < 2; ++b) {
      Circuit c(1);
      c.add(Gate::prep(0, axis, b));
      const DensityMatrix rho = simulate(c);
      const CMatrix expected = PauliEigenstate::of(axis, b).density_matrix;
      EXPECT_LT((rho.matrix() - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Schedule, MomentsAreAsap) {
  Circuit c(3);
  c.add(Gate::h(0)).add(Gate::x(2)).add(Gate::cnot(0, 1)).add(Gate::h(2));
  const auto moments = schedule_moments(c);
  ASSERT_EQ(moments.size(), 2u);
  EXPECT_EQ(moments[0].gate_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(moments[1].gate_indices, (std::vector<std::size_t>{2, 3}));
  EXPECT_DOUBLE_EQ(moments[1].duration_ns, 300.0);
}

TEST(DistributionJson, RoundTrip) {
  const OutputDistribution d{2, {0.25, 0.0, 0.5, 0.25}};
  const nlohmann::json j = distribution_to_json(d);
  EXPECT_FALSE(j["probabilities"].contains("01"));
  const OutputDistribution back = distribution_from_json(j);
  EXPECT_EQ(back.probs, d.probs);
}

}  // namespace
}  // namespace qdc
