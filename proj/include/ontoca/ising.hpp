// Copyright 2026 The ontoca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Ising-spin models whose one-step maps are phased permutations of spin
// configurations.
//
// Bit layout of a basis index: bit v (v < N) is vertex spin v, bit N + e is
// the spin of edge e in topology order. For edge spins a set bit is the
// sigma_3 = +1 ("up") state; vertex spins are only ever flipped, so their
// sigma_3 convention only matters for gauge checks, where a set bit is +1 too.

#ifndef ONTOCA_ISING_HPP_
#define ONTOCA_ISING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "ontoca/gaussian.hpp"

namespace ontoca {

using BasisIndex = std::uint32_t;

inline constexpr int kDefaultMaxBits = 24;
inline constexpr int kDenseVerificationBits = 12;

struct Edge {
  int i = 0;
  int j = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphTopology {
 public:
  /// Normalizes each edge to i < j; throws InvalidTopology on duplicates,
  /// self-loops, out-of-range vertices, or fewer than two vertices.
  GraphTopology(int n_vertices, std::vector<Edge> edges);

  static GraphTopology fully_connected(int n);
  static GraphTopology ring(int n);
  static GraphTopology path(int n);
  static GraphTopology empty(int n);

  int n_vertices() const { return n_vertices_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int total_bits() const { return n_vertices_ + n_edges(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> edge_index(Edge e) const;

  BasisIndex vertex_mask() const { return (BasisIndex{1} << n_vertices_) - 1; }

 private:
  int n_vertices_;
  std::vector<Edge> edges_;
};

/// Vertex and edge spins of one configuration.
struct SpinConfiguration {
  std::vector<bool> vertex_bits;
  std::vector<bool> edge_bits;

  BasisIndex basis_index() const;
  static SpinConfiguration from_index(BasisIndex index, int n_vertices, int n_edges);
  /// '0'/'1' per spin, vertex (or edge) 0 first.
  std::string vertex_string() const;
  std::string edge_string() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
};

/// U|b> = i^{phase_exponent(b)} |target(b)>, a bijection with phases that are
/// fourth roots of unity.
class PhasedPermutation {
 public:
  /// Throws NotPermutation unless `target` is a bijection on [0, size).
  PhasedPermutation(std::vector<BasisIndex> target, std::vector<std::uint8_t> phase_exponent);

  static PhasedPermutation identity(std::size_t size);

  std::size_t size() const { return target_.size(); }
  BasisIndex target(BasisIndex b) const { return target_[b]; }
  std::uint8_t phase_exponent(BasisIndex b) const { return phase_[b]; }
  const std::vector<BasisIndex>& targets() const { return target_; }
  const std::vector<std::uint8_t>& phases() const { return phase_; }

  /// `after` ∘ `before`: apply `before` first.
  friend PhasedPermutation compose(const PhasedPermutation& after,
                                   const PhasedPermutation& before);
  PhasedPermutation inverse() const;
  /// Same permutation, every phase multiplied by i^k.
  PhasedPermutation with_global_phase(int k) const;

  ComplexMatrix dense() const;
  Eigen::SparseMatrix<std::complex<double>> sparse() const;

  friend bool operator==(const PhasedPermutation&, const PhasedPermutation&) = default;

 private:
  std::vector<BasisIndex> target_;
  std::vector<std::uint8_t> phase_;
};

/// Basis state with its accumulated phase exponent.
struct PhasedState {
  BasisIndex index = 0;
  std::uint8_t phase_exponent = 0;

  friend bool operator==(const PhasedState&, const PhasedState&) = default;
};

/// Repeated application of `perm`; steps + 1 entries.
std::vector<PhasedState> iterate(const PhasedPermutation& perm, PhasedState start, int steps);

/// k-fold power.
PhasedPermutation power(const PhasedPermutation& perm, int k);

// -- Model A ----------------------------------------------------------------

struct ScheduledFlip {
  Edge edge;
  int sign = 1;
};

/// Which single coefficient c_ij = ±1 is active at each step.
class Schedule {
 public:
  enum class Kind { kPeriodic, kSeededRandom, kExplicit };

  /// Cycles through `flips`.
  static Schedule periodic(std::vector<ScheduledFlip> flips);
  /// Draws from `pool` at every step, reproducibly from `seed`.
  static Schedule seeded_random(std::uint64_t seed, std::vector<ScheduledFlip> pool);
  /// flips[n] at step n; later steps throw ScheduleExhausted.
  static Schedule explicit_steps(std::vector<ScheduledFlip> flips);

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ScheduledFlip>& flips() const { return flips_; }

  /// Active flips for steps 0 .. steps - 1. Throws ScheduleExhausted when an
  /// explicit schedule is shorter than `steps`.
  std::vector<ScheduledFlip> expand(int steps) const;
  /// Throws EdgeNotInTopology / InvalidSchedule.
  void validate(const GraphTopology& topology) const;

 private:
  Schedule(Kind kind, std::uint64_t seed, std::vector<ScheduledFlip> flips);

  Kind kind_;
  std::uint64_t seed_;
  std::vector<ScheduledFlip> flips_;
};

/// -i c_ij sigma_1^(i) sigma_1^(j) on the 2^N vertex configurations.
PhasedPermutation model_a_step_operator(const GraphTopology& topology, Edge active_edge,
                                        int sign);

/// Exact Model A trajectory from `start` (a vertex-only configuration).
std::vector<PhasedState> model_a_evolve(const GraphTopology& topology, BasisIndex start,
                                        const Schedule& schedule, int steps);

// -- Model B ----------------------------------------------------------------

/// One factor of H_B: flips vertices i, j of edge e when the edge spin is up,
/// identity otherwise; no phase.
PhasedPermutation model_b_factor(const GraphTopology& topology, int edge_index,
                                 int max_bits = kDefaultMaxBits);

/// -i H_B on the 2^(N+E) configurations. Throws DimensionOverflow when
/// N + E > max_bits.
PhasedPermutation model_b_transfer(const GraphTopology& topology,
                                   int max_bits = kDefaultMaxBits);

/// -i H_B assembled as a sparse matrix from Kronecker products of 2×2 Pauli
/// matrices and edge projectors, factor by factor in `edge_order` (default:
/// topology order). Independent of the permutation route.
Eigen::SparseMatrix<std::complex<double>> model_b_matrix(
    const GraphTopology& topology, const std::vector<int>& edge_order = {});

/// Exact structural audit of a sparse matrix.
struct PermutationStructure {
  bool one_entry_per_row_and_column = false;
  bool unit_modulus_entries = false;
  bool unitary = false;

  bool ok() const { return one_entry_per_row_and_column && unit_modulus_entries && unitary; }
};

PermutationStructure audit_phased_permutation(
    const Eigen::SparseMatrix<std::complex<double>>& m);

struct ExponentialFormReport {
  double max_deviation = 0.0;
  /// Best-fit overall phase c with exp(...) ≈ c · (-i H_B).
  std::complex<double> global_phase{1.0, 0.0};
  /// Largest block the exponential was evaluated on.
  int largest_block = 0;
};

/// Evaluates exp(-i pi/2 sum_e G_e) numerically, with
/// G_e = P_up(e) sigma_1^(i) sigma_1^(j) + P_down(e), and compares it with
/// the exact -i H_B up to one global phase. The generator is split into the
/// connected components of its sparsity graph and each block is
/// exponentiated by a Hermitian eigen-decomposition. Requires N + E <= 12.
ExponentialFormReport verify_exponential_form(const GraphTopology& topology);

/// (±½[sigma_3 ± 1])^k == ±½[sigma_3 ± 1] for both sign choices, in exact
/// rational 2×2 arithmetic.
bool projector_identity_check(int k);

struct GaugeReport {
  bool commutes = false;
  double max_commutator_entry = 0.0;
};

/// Commutator of a gauge transform with the exact Model B map.
GaugeReport gauge_check(const PhasedPermutation& transform, const GraphTopology& topology);
/// Dense variant, tolerance 1e-10. Requires N + E <= 12.
GaugeReport gauge_check(const ComplexMatrix& transform, const GraphTopology& topology);

/// sigma_1 on every vertex spin, identity on edges.
PhasedPermutation global_vertex_flip(const GraphTopology& topology);
/// sigma_1 on one vertex spin.
PhasedPermutation vertex_sigma1(const GraphTopology& topology, int vertex);
/// sigma_3 on one vertex spin (+1 for a set bit).
PhasedPermutation vertex_sigma3(const GraphTopology& topology, int vertex);

// -- Edge dynamics ----------------------------------------------------------

/// Identity on all spins.
PhasedPermutation frozen_edges(const GraphTopology& topology);
/// Moves the spin of edge e to edge (e + 1) mod E.
PhasedPermutation cyclic_edge_shift(const GraphTopology& topology);
/// A fixed pseudo-random bijection of the 2^E edge configurations.
PhasedPermutation random_edge_permutation(const GraphTopology& topology, std::uint64_t seed);

/// edge_rule ∘ transfer. Throws NotPermutation when edge_rule touches
/// vertex spins or the sizes differ.
PhasedPermutation edge_update_compose(const PhasedPermutation& transfer,
                                      const PhasedPermutation& edge_rule,
                                      const GraphTopology& topology);

}  // namespace ontoca

#endif  // ONTOCA_ISING_HPP_
