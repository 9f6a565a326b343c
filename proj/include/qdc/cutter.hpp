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
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/noise.hpp"
#include "qdc/router.hpp"

namespace qdc {

/// A removed wire segment: the edge on `qubit` from gate `source_gate` to
/// gate `target_gate` (gate indices of the original circuit).
struct CutEdge {
  std::size_t source_gate = 0;
  std::size_t target_gate = 0;
  std::size_t qubit = 0;
  bool operator==(const CutEdge&) const = default;
};

struct CutSpec {
  std::vector<CutEdge> cut_edges;
  std::size_t size() const { return cut_edges.size(); }
};

/// [{"source_gate_index", "target_gate_index", "qubit"}, ...]
nlohmann::json cutspec_to_json(const CutSpec& spec);
CutSpec cutspec_from_json(const nlohmann::json& j);

/// A dangling wire of a fragment: which cut it belongs to and the fragment
/// qubit it sits on.
struct Leg {
  std::size_t cut = 0;
  std::size_t local_qubit = 0;
  bool operator==(const Leg&) const = default;
};

struct Fragment {
  std::size_t index = 0;
  /// Gates of the fragment on local qubits, without preparations or
  /// measurements. Local qubits are wire segments ordered by original wire.
  Circuit sub_circuit{1};
  /// Ordered by cut index.
  std::vector<Leg> incoming_legs;
  std::vector<Leg> outgoing_legs;
  /// Original qubits whose final value this fragment produces, ascending,
  /// and the local qubit carrying each.
  std::vector<std::size_t> final_qubits;
  std::vector<std::size_t> final_local;
  /// Original wire of every local qubit.
  std::vector<std::size_t> local_wire;
  /// Original gate indices, in order.
  std::vector<std::size_t> gate_indices;

  std::size_t num_incoming() const { return incoming_legs.size(); }
  std::size_t num_outgoing() const { return outgoing_legs.size(); }
  std::size_t num_final() const { return final_qubits.size(); }
};

/// Removes the cut edges and returns one fragment per connected piece,
/// ordered by smallest original qubit. Rejects specs that name something
/// other than a gate-to-gate wire segment, repeat an edge, fail to separate
/// the two endpoints of a cut edge, or leave fewer than two pieces.
/// The circuit must not contain PREP or MEASURE gates.
std::vector<Fragment> cut(const CircuitDag& dag, const CutSpec& spec);

/// The uncut circuit as a single fragment without legs.
Fragment whole_circuit_fragment(const Circuit& circuit);

/// Final-qubit counts of k consecutive blocks over m qubits; earlier blocks
/// get the extra qubit.
std::vector<std::size_t> balanced_block_sizes(std::size_t m, std::size_t k);

/// k - 1 cuts on build_ghz_ladder(m): the boundary after block j cuts the
/// wire of the next block's first qubit right after the CNOT that entangles
/// it with the previous block.
CutSpec balanced_ghz_cutspec(std::size_t m, std::size_t k);

/// Bell: incoming legs are fed by one half of a Bell pair whose other half is
/// measured (weights gamma). Eigenstate: incoming legs are prepared in
/// Pauli eigenstates (weights gamma-tilde / 2).
enum class CutBackend { Bell, Eigenstate };

std::string_view to_string(CutBackend backend);
CutBackend cut_backend_from_string(std::string_view name);

struct FragmentVariant {
  std::size_t fragment_index = 0;
  std::vector<PauliAxis> axes_in;
  std::vector<PauliAxis> axes_out;
  /// Prepared eigenindex per incoming leg (Eigenstate backend only).
  std::vector<int> prep_bits;
  Circuit circuit{1};
};

/// Bell: 3^(n+m) variants; qubits are the fragment's local qubits followed by
/// one ancilla per incoming leg. Eigenstate: 3^(n+m) 2^n variants.
/// Every qubit of a variant circuit ends in a MEASURE.
std::vector<FragmentVariant> generate_variants(const Fragment& fragment,
                                               CutBackend backend = CutBackend::Bell,
                                               const GateDurations& durations = {});

std::size_t variant_count(const Fragment& fragment, CutBackend backend);

/// Probability tensor of one fragment with layout
/// (axes_in..., axes_out..., b..., s..., b'...). Each axis index is 3-valued,
/// each bit 2-valued. For the Bell backend b is the ancilla outcome; for the
/// Eigenstate backend it is the prepared eigenindex.
struct FragmentDistribution {
  std::size_t fragment_index = 0;
  CutBackend backend = CutBackend::Bell;
  std::vector<std::size_t> in_cuts;
  std::vector<std::size_t> out_cuts;
  std::vector<std::size_t> final_qubits;
  std::vector<double> values;

  std::size_t num_axis_settings() const;
  /// Entries per axis setting.
  std::size_t slice_size() const;
  /// Offset of the axis setting; `axes` lists incoming then outgoing axes.
  std::size_t axis_offset(std::span<const PauliAxis> axes) const;
  /// Sum of one axis setting's entries.
  double slice_total(std::size_t setting) const;
  /// Largest |sum - expected| over axis settings, where the expected sum is
  /// 1 (Bell) or 2^n (Eigenstate, one distribution per prepared bit string).
  double normalization_error() const;
};

nlohmann::json fragment_distribution_to_json(const FragmentDistribution& d);
FragmentDistribution fragment_distribution_from_json(const nlohmann::json& j);

struct CollectOptions {
  std::optional<NoiseModel> noise;
  /// nullopt: exact distributions.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::optional<ConnectivityGraph> routing;
  Placement placement = Placement::Line;
  /// 0: one worker per hardware thread.
  std::size_t workers = 0;
};

struct CollectStats {
  std::size_t circuits = 0;
  /// Largest SWAP count among the fragment's routed variants.
  std::size_t swap_count = 0;
};

/// Distribution of one variant circuit over its qubits in logical order,
/// with the variant's measurements, routing and noise applied.
OutputDistribution run_variant(const Circuit& circuit, const CollectOptions& options,
                               std::uint64_t stream, std::size_t* swap_count = nullptr);

/// Runs every variant and assembles the fragment tensor.
FragmentDistribution collect_distributions(const Fragment& fragment,
                                           const std::vector<FragmentVariant>& variants,
                                           CutBackend backend,
                                           const CollectOptions& options = {},
                                           CollectStats* stats = nullptr);

}  // namespace qdc
