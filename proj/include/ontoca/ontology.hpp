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

#ifndef ONTOCA_ONTOLOGY_HPP_
#define ONTOCA_ONTOLOGY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoca/evolution.hpp"
#include "ontoca/gaussian.hpp"
#include "ontoca/hamiltonian.hpp"

namespace ontoca {

/// Projective identity of a nonzero vector: every component divided by the
/// first nonzero one, so the pivot is exactly 1.
struct CanonicalRay {
  Vector<GaussianRational> components;
  int pivot_index = 0;

  friend bool operator==(const CanonicalRay& a, const CanonicalRay& b) {
    return a.pivot_index == b.pivot_index && a.components == b.components;
  }
  friend bool operator!=(const CanonicalRay& a, const CanonicalRay& b) { return !(a == b); }

  std::vector<std::string> component_strings() const;
};

/// Throws ZeroVector for v = 0.
CanonicalRay canonical_ray(const GaussianVector& v);
CanonicalRay canonical_ray(const Vector<GaussianRational>& v);

/// Rays of e_0, ..., e_{dim-1}.
std::vector<CanonicalRay> standard_basis_rays(int dim);

enum class OntologyFailure {
  kNone,
  /// Some iterate is not a multiple of a basis ray (or vanished).
  kLeftBasis,
  /// All rays stayed in the basis but the pair did not recur within max_steps.
  kNoRecurrence,
};

std::string_view to_string(OntologyFailure failure);

struct PermutationReport {
  bool is_ontological = false;
  /// Rays of psi_0 .. psi_{P-1} for the ray period P, or every ray visited
  /// when no ray period was found.
  std::vector<CanonicalRay> ray_cycle;
  std::optional<std::int64_t> ray_period;
  /// First n > 0 with (psi_n, psi_{n+1}) == (psi_0, psi_1).
  std::optional<std::int64_t> exact_state_period;
  /// psi_n = phase_log[n] · ray_n; the factor is the pivot component of psi_n.
  std::vector<GaussianInt> phase_log;
  /// Position of ray_n in the supplied basis.
  std::vector<int> basis_sequence;
  /// For kLeftBasis the index of the offending state, for kNoRecurrence the
  /// last step scanned.
  std::optional<std::int64_t> failure_step;
  OntologyFailure failure = OntologyFailure::kNone;
};

inline int default_max_steps(int dim) { return 4 * dim * 16; }

/// Iterates the model exactly from (psi_0, psi_1) and decides whether the
/// orbit is a phased permutation of the supplied basis rays.
PermutationReport detect_phased_permutation(const HamiltonianModel& model,
                                            const GaussianVector& psi0,
                                            const GaussianVector& psi1,
                                            const std::vector<CanonicalRay>& basis,
                                            std::optional<int> max_steps = std::nullopt);

/// psi_n^† psi_n for every stored state.
std::vector<BigInt> norm_trace(const Trajectory& trajectory);

/// "H2" (sigma_1), "H3" and "H4" (the three- and four-state permutation
/// models). Throws UnknownPreset otherwise.
HamiltonianModel preset_hamiltonian(std::string_view name);

}  // namespace ontoca

#endif  // ONTOCA_ONTOLOGY_HPP_
