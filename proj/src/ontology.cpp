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

#include "ontoca/ontology.hpp"

#include <algorithm>

#include "ontoca/errors.hpp"

namespace ontoca {

std::vector<std::string> CanonicalRay::component_strings() const {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(components.size()));
  for (Eigen::Index k = 0; k < components.size(); ++k) out.push_back(components(k).to_string());
  return out;
}

CanonicalRay canonical_ray(const Vector<GaussianRational>& v) {
  Eigen::Index pivot = 0;
  while (pivot < v.size() && v(pivot).is_zero()) ++pivot;
  if (pivot == v.size()) throw ZeroVector("canonical_ray: zero vector has no ray");
  CanonicalRay ray{Vector<GaussianRational>(v.size()), static_cast<int>(pivot)};
  const GaussianRational p = v(pivot);
  for (Eigen::Index k = 0; k < v.size(); ++k) ray.components(k) = k == pivot ? 1 : v(k) / p;
  return ray;
}

CanonicalRay canonical_ray(const GaussianVector& v) {
  Vector<GaussianRational> r(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) r(k) = to_rational(v(k));
  return canonical_ray(r);
}

std::vector<CanonicalRay> standard_basis_rays(int dim) {
  std::vector<CanonicalRay> out;
  for (int k = 0; k < dim; ++k) {
    GaussianVector e = GaussianVector::Zero(dim);
    e(k) = 1;
    out.push_back(canonical_ray(e));
  }
  return out;
}

std::string_view to_string(OntologyFailure failure) {
  switch (failure) {
    case OntologyFailure::kNone:
      return "none";
    case OntologyFailure::kLeftBasis:
      return "left_basis";
    case OntologyFailure::kNoRecurrence:
      return "no_recurrence";
  }
  return "unknown";
}

namespace {

int find_ray(const std::vector<CanonicalRay>& basis, const GaussianVector& v) {
  if (std::all_of(v.begin(), v.end(), [](const GaussianInt& z) { return z.is_zero(); })) {
    return -1;
  }
  const CanonicalRay ray = canonical_ray(v);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] == ray) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

PermutationReport detect_phased_permutation(const HamiltonianModel& model,
                                            const GaussianVector& psi0,
                                            const GaussianVector& psi1,
                                            const std::vector<CanonicalRay>& basis,
                                            std::optional<int> max_steps) {
  if (psi0.size() != model.dim() || psi1.size() != model.dim()) {
    throw DimensionMismatch("detect_phased_permutation: initial states do not match the model");
  }
  if (basis.empty()) throw Error("detect_phased_permutation: basis must be nonempty");
  const int limit = max_steps.value_or(default_max_steps(model.dim()));
  if (limit < 1) throw Error("detect_phased_permutation: max_steps must be >= 1");

  PermutationReport report;
  std::vector<CanonicalRay> visited;

  // Records psi_n; returns false when it leaves the basis.
  auto record = [&](std::int64_t n, const GaussianVector& psi) {
    const int idx = find_ray(basis, psi);
    if (idx < 0) {
      report.failure = OntologyFailure::kLeftBasis;
      report.failure_step = n;
      return false;
    }
    const CanonicalRay& ray = basis[static_cast<std::size_t>(idx)];
    report.basis_sequence.push_back(idx);
    report.phase_log.push_back(psi(ray.pivot_index));
    visited.push_back(ray);
    return true;
  };

  CAPairState pair{psi0, psi1, 1};
  bool ok = record(0, psi0) && record(1, psi1);
  for (std::int64_t n = 1; ok && n <= limit; ++n) {
    // pair holds (psi_{n-1}, psi_n); advance to (psi_n, psi_{n+1}).
    pair = step(pair, model.H(), Direction::kForward);
    if (!record(n + 1, pair.curr)) break;
    const auto& seq = report.basis_sequence;
    if (!report.ray_period && seq[static_cast<std::size_t>(n)] == seq[0] &&
        seq[static_cast<std::size_t>(n) + 1] == seq[1]) {
      report.ray_period = n;
    }
    if (pair.prev == psi0 && pair.curr == psi1) {
      report.exact_state_period = n;
      break;
    }
  }

  if (report.failure == OntologyFailure::kNone && !report.exact_state_period) {
    report.failure = OntologyFailure::kNoRecurrence;
    report.failure_step = limit;
  }
  report.is_ontological = report.failure == OntologyFailure::kNone;
  const std::size_t cycle = report.ray_period ? static_cast<std::size_t>(*report.ray_period)
                                              : visited.size();
  report.ray_cycle.assign(visited.begin(),
                          visited.begin() + static_cast<std::ptrdiff_t>(cycle));
  return report;
}

std::vector<BigInt> norm_trace(const Trajectory& trajectory) {
  std::vector<BigInt> out;
  out.reserve(trajectory.states.size());
  for (const auto& s : trajectory.states) out.push_back(squared_norm(s));
  return out;
}

HamiltonianModel preset_hamiltonian(std::string_view name) {
  if (name == "H2") {
    Eigen::MatrixXi s(2, 2);
    s << 0, 1, 1, 0;
    return build_hamiltonian(s, Eigen::MatrixXi::Zero(2, 2));
  }
  if (name == "H3") {
    // H3 = [[0, -i, 1], [i, 0, -i], [1, i, 0]]
    Eigen::MatrixXi s(3, 3);
    Eigen::MatrixXi a(3, 3);
    s << 0, 0, 1,  //
        0, 0, 0,   //
        1, 0, 0;
    a << 0, -1, 0,  //
        1, 0, -1,   //
        0, 1, 0;
    return build_hamiltonian(s, a);
  }
  if (name == "H4") {
    // H4 = [[0, -i, 0, 1], [i, 0, -i, 0], [0, i, 0, -i], [1, 0, i, 0]]
    Eigen::MatrixXi s = Eigen::MatrixXi::Zero(4, 4);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(4, 4);
    s(0, 3) = s(3, 0) = 1;
    for (int k = 0; k < 3; ++k) {
      a(k, k + 1) = -1;
      a(k + 1, k) = 1;
    }
    return build_hamiltonian(s, a);
  }
  throw UnknownPreset("unknown preset Hamiltonian '" + std::string(name) + "'");
}

}  // namespace ontoca
