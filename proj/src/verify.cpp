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

// The verify-all suite. Each check returns a pass flag and a small detail
// object; nothing here depends on wall-clock time.

#include <algorithm>
#include <cmath>
#include <functional>

#include "ontoca/errors.hpp"
#include "ontoca/evolution.hpp"
#include "ontoca/experiments.hpp"
#include "ontoca/ising.hpp"
#include "ontoca/multitime.hpp"
#include "ontoca/ontology.hpp"
#include "ontoca/propagator.hpp"
#include "ontoca/random.hpp"

namespace ontoca {
namespace {

struct Check {
  bool passed = false;
  Json detail = Json::object();
};

GaussianVector unit(int dim, int k) {
  GaussianVector v = GaussianVector::Constant(dim, GaussianInt(0));
  v(k) = GaussianInt(1);
  return v;
}

ComplexVector as_complex(const GaussianVector& v) {
  ComplexVector c(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) c(k) = to_complex(v(k));
  return c;
}

Check h2_sequence(Rng&) {
  const HamiltonianModel h2 = preset_hamiltonian("H2");
  const GaussianVector e0 = unit(2, 0);
  const GaussianVector e1 = unit(2, 1);
  const Trajectory t = evolve(CAPairState{e0, e1, 1}, h2, 11);
  const GaussianInt i = GaussianInt::i();
  const GaussianInt one(1);
  const std::vector<GaussianVector> expected = {
      e0, e1, (one - i) * e0, (-i) * e1, (-i) * e0, (-(one + i)) * e1, (-one) * e0, (-one) * e1};
  bool ok = t.states.size() == 13;
  for (std::size_t n = 0; ok && n < expected.size(); ++n) ok = t.states[n] == expected[n];
  const bool period = ok && t.states[12] == e0 && t.states[11] != e1;
  Check c;
  c.passed = ok && period;
  c.detail["prefix_matches"] = ok;
  c.detail["returns_at_12"] = period;
  return c;
}

Check presets_ontological(Rng&) {
  Check c;
  c.passed = true;
  for (const char* name : {"H2", "H3", "H4"}) {
    const HamiltonianModel m = preset_hamiltonian(name);
    const PermutationReport r =
        detect_phased_permutation(m, unit(m.dim(), 0), unit(m.dim(), 1), standard_basis_rays(m.dim()));
    const Trajectory t = evolve(CAPairState{unit(m.dim(), 0), unit(m.dim(), 1), 1}, m, 40);
    // H2 doubles the norm on its way round; the other presets stay on unit vectors.
    bool unit_norms = true;
    if (std::string(name) != "H2") {
      for (const BigInt& n : norm_trace(t)) unit_norms = unit_norms && n == 1;
    }
    Json d;
    d["ontological"] = r.is_ontological;
    d["exact_period"] = r.exact_state_period ? Json(*r.exact_state_period) : Json(nullptr);
    d["unit_norms"] = unit_norms;
    c.detail[name] = std::move(d);
    c.passed = c.passed && r.is_ontological && unit_norms;
  }
  return c;
}

Check closed_form(Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 4));
    const HamiltonianModel m = random_subcritical_model(dim, rng);
    const GaussianVector a = random_gaussian_vector(dim, 3, rng);
    const GaussianVector b = random_gaussian_vector(dim, 3, rng);
    const Trajectory t = evolve(CAPairState{a, b, 1}, m, 24);
    const SpectralDecomposition spec = phi_operator(m);
    for (std::size_t n = 0; n < t.states.size(); ++n) {
      const ComplexVector exact = as_complex(t.states[n]);
      const ComplexVector cf = closed_form_state(spec, as_complex(a), as_complex(b), static_cast<std::int64_t>(n));
      worst = std::max(worst, (exact - cf).cwiseAbs().maxCoeff() / std::max(1.0, exact.cwiseAbs().maxCoeff()));
    }
  }
  Check c;
  c.passed = worst <= 1e-8;
  c.detail["max_relative_deviation"] = worst;
  return c;
}

Check transfer_composition(Rng& rng) {
  std::int64_t mismatches = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = static_cast<int>(uniform_int(rng, 1, 4));
    const HamiltonianModel m = random_model(dim, 2, rng);
    const GaussianVector a = random_gaussian_vector(dim, 3, rng);
    const GaussianVector b = random_gaussian_vector(dim, 3, rng);
    const Trajectory t = evolve(CAPairState{a, b, 1}, m, 10);
    const std::vector<GaussianMatrix> T = transfer_polynomials(m, static_cast<int>(t.states.size()));
    for (std::size_t n = 0; n < t.states.size(); ++n) {
      const GaussianVector v = T[n + 1] * b + T[n] * a;
      if (v != t.states[n]) ++mismatches;
    }
  }
  Check c;
  c.passed = mismatches == 0;
  c.detail["mismatches"] = mismatches;
  return c;
}

Check conservation_and_reversibility(Rng& rng) {
  std::int64_t q_breaks = 0;
  std::int64_t reverse_breaks = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = static_cast<int>(uniform_int(rng, 1, 5));
    const HamiltonianModel m = random_model(dim, 3, rng, 0.6);
    CAPairState pair{random_gaussian_vector(dim, 4, rng), random_gaussian_vector(dim, 4, rng), 1};
    const CAPairState start = pair;
    const BigInt q = two_time_correlation(pair);
    for (int k = 0; k < 20; ++k) {
      pair = step(pair, m, Direction::kForward);
      if (two_time_correlation(pair) != q) ++q_breaks;
    }
    for (int k = 0; k < 20; ++k) pair = step(pair, m, Direction::kBackward);
    if (!(pair == start)) ++reverse_breaks;
  }
  Check c;
  c.passed = q_breaks == 0 && reverse_breaks == 0;
  c.detail["correlation_changes"] = q_breaks;
  c.detail["round_trip_failures"] = reverse_breaks;
  return c;
}

Check stationary_modes(Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const HamiltonianModel m = random_subcritical_model(static_cast<int>(uniform_int(rng, 2, 4)), rng);
    const SpectralDecomposition spec = phi_operator(m);
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
      worst = std::max(worst, stationary_residual(m.H_complex(), spec.eigenvalues(k),
                                                  spec.eigenvectors.col(k), 50));
    }
  }
  const bool real_inside = std::abs(dispersion_omega(1.0).imag()) == 0.0;
  const bool complex_outside = std::abs(dispersion_omega(3.0).imag()) > 0.0;
  Check c;
  c.passed = worst <= 1e-10 && real_inside && complex_outside;
  c.detail["max_stationary_residual"] = worst;
  c.detail["real_frequency_inside_band"] = real_inside;
  c.detail["complex_frequency_outside_band"] = complex_outside;
  return c;
}

Check continuum(Rng&) {
  const HamiltonianModel m = preset_hamiltonian("H2");
  ComplexVector psi0 = ComplexVector::Zero(2);
  psi0(0) = 1.0;
  const std::vector<SweepPoint> sweep = continuum_sweep(m, psi0, {0.2, 0.1, 0.05, 0.025}, 2.0);
  bool shrinking = true;
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    shrinking = shrinking && sweep[k].deviation < sweep[k - 1].deviation;
  }
  Check c;
  c.passed = shrinking;
  c.detail["sweep"] = sweep_to_json(sweep);
  return c;
}

std::vector<GaussianVector> solution(const HamiltonianModel& m, const GaussianVector& a,
                                     const GaussianVector& b, int length) {
  const Trajectory t = evolve(CAPairState{a, b, 1}, m, length - 2);
  return t.states;
}

Check multitime_product(Rng& rng) {
  double worst = 0.0;
  std::int64_t diagonal_mismatches = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const HamiltonianModel h1 = random_model(static_cast<int>(uniform_int(rng, 1, 3)), 2, rng);
    const HamiltonianModel h2 = random_model(static_cast<int>(uniform_int(rng, 1, 3)), 2, rng);
    const auto phi1 = solution(h1, random_gaussian_vector(h1.dim(), 2, rng),
                               random_gaussian_vector(h1.dim(), 2, rng), 10);
    const auto phi2 = solution(h2, random_gaussian_vector(h2.dim(), 2, rng),
                               random_gaussian_vector(h2.dim(), 2, rng), 10);
    const auto H = TensorHamiltonian<GaussianInt>::separable({h1.H(), h2.H()});
    const MultiTimeField<GaussianInt> product = product_field(phi1, 0, phi2, 0);
    worst = std::max(worst, max_equation_residual(product, H));

    MultiTimeField<GaussianInt> field(h1.dim(), h2.dim());
    for (std::int64_t s = 3; s <= 4; ++s) {
      for (std::int64_t n1 = 0; n1 <= s; ++n1) field.set({n1, s - n1}, product.at({n1, s - n1}));
    }
    for (std::int64_t s = 5; s <= 7; ++s) {
      const LatticePoint at{s - 4, 4};
      field = propagate_diagonal<GaussianInt>(field, H, ExtraPoint<GaussianInt>{at, product.at(at)});
    }
    for (const auto& [p, v] : field.values()) {
      if (product.at(p) != v) ++diagonal_mismatches;
    }
  }
  Check c;
  c.passed = worst == 0.0 && diagonal_mismatches == 0;
  c.detail["product_residual"] = worst;
  c.detail["diagonal_mismatches"] = diagonal_mismatches;
  return c;
}

Check leibniz(Rng& rng) {
  std::vector<BigRational> f;
  for (int n = 0; n < 12; ++n) f.emplace_back(n * n);
  const std::vector<BigRational> g = random_rational_sequence(12, 5, rng);
  const LeibnizReport r = leibniz_identity_check(f, g);
  Check c;
  c.passed = r.modified_rule_exact && r.naive_nonzero_points > 0;
  c.detail["modified_rule_exact"] = r.modified_rule_exact;
  c.detail["naive_nonzero_points"] = r.naive_nonzero_points;
  return c;
}

Check model_b_structure(Rng&) {
  Check c;
  c.passed = true;
  const std::vector<std::pair<std::string, GraphTopology>> graphs = {
      {"ring3", GraphTopology::ring(3)},
      {"path4", GraphTopology::path(4)},
      {"complete4", GraphTopology::fully_connected(4)}};
  for (const auto& [name, g] : graphs) {
    const auto m = model_b_matrix(g);
    const PermutationStructure s = audit_phased_permutation(m);
    const bool same = (m - model_b_transfer(g).sparse()).norm() == 0.0;
    const ExponentialFormReport ex = verify_exponential_form(g);
    Json d;
    d["phased_permutation"] = s.ok();
    d["matches_transfer"] = same;
    d["exponential_form_deviation"] = ex.max_deviation;
    c.detail[name] = std::move(d);
    c.passed = c.passed && s.ok() && same && ex.max_deviation <= 1e-9;
  }
  return c;
}

Check model_a_composition(Rng& rng) {
  const GraphTopology g = GraphTopology::path(4);
  std::vector<ScheduledFlip> pool;
  for (const Edge& e : g.edges()) {
    pool.push_back({e, 1});
    pool.push_back({e, -1});
  }
  const Schedule schedule = Schedule::seeded_random(rng(), pool);
  const int steps = 12;
  std::int64_t mismatches = 0;
  for (BasisIndex start = 0; start < 16; ++start) {
    const std::vector<PhasedState> states = model_a_evolve(g, start, schedule, steps);
    PhasedPermutation product = PhasedPermutation::identity(16);
    const std::vector<ScheduledFlip> flips = schedule.expand(steps);
    for (int k = 0; k < steps; ++k) {
      product = compose(model_a_step_operator(g, flips[static_cast<std::size_t>(k)].edge,
                                              flips[static_cast<std::size_t>(k)].sign),
                        product);
      const PhasedState expect{product.target(start), product.phase_exponent(start)};
      if (!(expect == states[static_cast<std::size_t>(k) + 1])) ++mismatches;
    }
  }
  Check c;
  c.passed = mismatches == 0;
  c.detail["mismatches"] = mismatches;
  return c;
}

Check projector_identity(Rng&) {
  bool ok = true;
  for (int k = 1; k <= 8; ++k) ok = ok && projector_identity_check(k);
  Check c;
  c.passed = ok;
  c.detail["powers_checked"] = 8;
  return c;
}

Check gauge(Rng&) {
  const GraphTopology g = GraphTopology::ring(4);
  const GaugeReport exact = gauge_check(global_vertex_flip(g), g);
  const GaugeReport dense = gauge_check(ComplexMatrix(global_vertex_flip(g).dense()), g);
  Check c;
  c.passed = exact.commutes && dense.commutes;
  c.detail["global_flip_commutes"] = exact.commutes;
  c.detail["dense_max_commutator_entry"] = dense.max_commutator_entry;
  return c;
}

Check gup_robertson(Rng& rng) {
  const DiscretenessScale l(1.0);
  int violations = 0;
  for (const Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
    const LatticeOperator x = LatticeOperator::position(32, l, b);
    const LatticeOperator p = LatticeOperator::momentum(32, l, b);
    for (int k = 0; k < 100; ++k) {
      if (!robertson_check(LatticeState::random(32, rng), x, p).holds) ++violations;
    }
  }
  Check c;
  c.passed = violations == 0;
  c.detail["violations"] = violations;
  return c;
}

Check gup_bound(Rng&) {
  Check c;
  c.passed = true;
  Json rows = Json::array();
  for (double l : {0.5, 1.0, 2.0}) {
    const BoundMinimum b = bound_minimum(DiscretenessScale(l));
    const double gap = std::abs(b.closed_form - b.numeric);
    const double algebra = commutator_algebra_deviation(32, DiscretenessScale(l), Boundary::kPeriodic);
    Json r;
    r["scale"] = l;
    r["closed_form"] = b.closed_form;
    r["numeric_gap"] = gap;
    r["commutator_algebra_deviation"] = algebra;
    rows.push_back(std::move(r));
    c.passed = c.passed && gap <= 1e-12 && algebra <= 1e-12;
  }
  c.detail["scales"] = std::move(rows);
  return c;
}

}  // namespace

Json verify_all(std::uint64_t seed) {
  using Suite = std::pair<const char*, std::function<Check(Rng&)>>;
  const std::vector<Suite> suites = {
      {"h2_sequence", h2_sequence},
      {"presets_ontological", presets_ontological},
      {"closed_form", closed_form},
      {"transfer_composition", transfer_composition},
      {"conservation_and_reversibility", conservation_and_reversibility},
      {"stationary_modes", stationary_modes},
      {"continuum_limit", continuum},
      {"multitime_product", multitime_product},
      {"leibniz", leibniz},
      {"model_b_structure", model_b_structure},
      {"model_a_composition", model_a_composition},
      {"projector_identity", projector_identity},
      {"gauge", gauge},
      {"gup_robertson", gup_robertson},
      {"gup_bound", gup_bound},
  };
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["kind"] = "verify-all";
  report["seed"] = seed;
  Json results = Json::array();
  int passed = 0;
  int failed = 0;
  for (std::size_t k = 0; k < suites.size(); ++k) {
    // Every suite gets its own stream so adding one does not shift the others.
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
    Check c;
    try {
      c = suites[k].second(rng);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail["error"] = e.what();
    }
    log_message(LogLevel::kDebug, std::string(suites[k].first) + (c.passed ? " passed" : " FAILED"));
    Json row;
    row["name"] = suites[k].first;
    row["passed"] = c.passed;
    row["detail"] = std::move(c.detail);
    results.push_back(std::move(row));
    (c.passed ? passed : failed) += 1;
  }
  report["suites"] = std::move(results);
  report["passed"] = passed;
  report["failed"] = failed;
  return report;
}

}  // namespace ontoca
