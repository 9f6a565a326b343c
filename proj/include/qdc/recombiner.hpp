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
#include <string>
#include <vector>

#include "json.hpp"
#include "qdc/cutter.hpp"
#include "qdc/density.hpp"
#include "qdc/tensor.hpp"

namespace qdc {

/// Largest output register reconstruct_full accepts.
inline constexpr std::size_t kMaxReconstructedQubits = 24;

/// Index labels of the recombination network.
inline int alpha_label(std::size_t cut) { return static_cast<int>(3 * cut); }
inline int b_label(std::size_t cut) { return static_cast<int>(3 * cut + 1); }
inline int b_prime_label(std::size_t cut) { return static_cast<int>(3 * cut + 2); }
inline int s_label(std::size_t qubit) { return -1 - static_cast<int>(qubit); }

struct NetworkNode {
  enum class Kind { Fragment, Gamma };
  Kind kind = Kind::Fragment;
  /// Fragment index or cut index.
  std::size_t index = 0;
  Tensor tensor;
};

/// K fragment tensors followed by M connecting tensors. Cut c joins the
/// fragment measuring it (label b'_c) and the fragment receiving it (label
/// b_c) through node K + c; the axis label alpha_c is shared by all three.
struct RecombinationNetwork {
  CutBackend backend = CutBackend::Bell;
  std::size_t num_fragments = 0;
  std::size_t num_cuts = 0;
  std::vector<NetworkNode> nodes;
  /// (fragment node, connecting node), one per leg: 2M entries.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// s labels of the output qubits, qubit 0 first.
  std::vector<int> external_labels;

  std::size_t num_qubits() const { return external_labels.size(); }
  /// True when the fragment/connector graph is a simple path.
  bool is_path() const;
};

/// Fragment tensor with labels (alpha_in.., alpha_out.., b.., s.., b'..).
Tensor fragment_tensor(const FragmentDistribution& d);

/// Connecting tensor (alpha_c, b_c, b'_c): gamma for the Bell backend,
/// gamma-tilde / 2 for the Eigenstate backend.
Tensor connecting_tensor(std::size_t cut, CutBackend backend);

/// Rejects mixed backends, cuts without exactly one producer and one
/// consumer, and output qubits that are missing or produced twice.
RecombinationNetwork build_network(const std::vector<FragmentDistribution>& fragments);

/// Network with every output bit fixed; `bits` is written qubit 0 first.
RecombinationNetwork fix_output(const RecombinationNetwork& network,
                                const std::string& bits);

struct ContractionStep {
  std::size_t left = 0;
  std::size_t right = 0;
  /// Id of the produced node: node ids continue after the network's nodes.
  std::size_t result = 0;
  std::uint64_t cost = 0;
};

struct ContractionPlan {
  std::vector<ContractionStep> steps;
  std::uint64_t total_cost = 0;
};

/// Walks a path-shaped network from the lower-indexed end fragment.
ContractionPlan sequential_chain_plan(const RecombinationNetwork& network);

/// Greedy pairwise plan: repeatedly contracts the two live nodes sharing an
/// index whose contraction is cheapest (ties: smaller result, then lower
/// ids). Disconnected pieces are joined by outer products at the end.
ContractionPlan general_contraction_plan(const RecombinationNetwork& network);

/// Cost of summing all internal indices at once: the size of their joint
/// range, 12^M.
std::uint64_t naive_contraction_cost(const RecombinationNetwork& network);

/// Contracts the network along `plan`. `executed` receives the counted
/// multiplications of every step.
Tensor execute_plan(const RecombinationNetwork& network, const ContractionPlan& plan,
                    std::vector<std::uint64_t>* executed = nullptr);

/// p(bits) with all internal indices contracted.
double reconstruct_bitstring(const RecombinationNetwork& network, const std::string& bits);

/// All 2^n probabilities from one contraction with the outputs left open.
/// Raw values may be slightly negative under sampled or noisy inputs.
OutputDistribution reconstruct_full(const RecombinationNetwork& network,
                                    bool clip_and_renormalize = false);

/// Negative entries set to zero, then rescaled to sum 1.
OutputDistribution clip_and_renormalize(const OutputDistribution& dist);

nlohmann::json plan_to_json(const RecombinationNetwork& network,
                            const ContractionPlan& plan);

}  // namespace qdc
