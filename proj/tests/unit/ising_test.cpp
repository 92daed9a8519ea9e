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

#include <gtest/gtest.h>

#include <complex>
#include <map>

#include "ontoca/errors.hpp"
#include "ontoca/ising.hpp"
#include "property.hpp"

namespace ontoca {
namespace {

using C = std::complex<double>;
using testing::for_all;

// Oracle: operators written as Kronecker products of 2x2 factors, with bit k
// of the basis index as the k-th factor from the right.
ComplexMatrix kron2(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

ComplexMatrix on_bits(int bits, const std::map<int, ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = bits - 1; k >= 0; --k) {
    const auto it = factors.find(k);
    out = kron2(out, it == factors.end() ? ComplexMatrix(ComplexMatrix::Identity(2, 2)) : it->second);
  }
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

// Projector onto an edge bit equal to 1.
ComplexMatrix up() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 1) = 1;
  return m;
}

ComplexMatrix edge_oracle(const GraphTopology& g, int e) {
  const int bits = g.total_bits();
  const Edge ed = g.edges()[static_cast<std::size_t>(e)];
  const int gate = g.n_vertices() + e;
  ComplexMatrix down = ComplexMatrix::Identity(2, 2) - up();
  return on_bits(bits, {{gate, down}}) + on_bits(bits, {{gate, up()}, {ed.i, pauli_x()}, {ed.j, pauli_x()}});
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// -- Topology and configurations -------------------------------------------------------

TEST(GraphTopology, NormalizesAndValidates) {
  const GraphTopology g(3, {{2, 0}, {1, 2}});
  EXPECT_EQ(g.edges()[0], (Edge{0, 2}));
  EXPECT_EQ(g.edge_index({2, 1}), 1);
  EXPECT_EQ(g.edge_index({0, 1}), std::nullopt);
  EXPECT_EQ(g.total_bits(), 5);
  EXPECT_EQ(g.vertex_mask(), 7u);
  EXPECT_THROW(GraphTopology(3, {{0, 1}, {1, 0}}), InvalidTopology);
  EXPECT_THROW(GraphTopology(3, {{1, 1}}), InvalidTopology);
  EXPECT_THROW(GraphTopology(3, {{0, 3}}), InvalidTopology);
  EXPECT_THROW(GraphTopology(1, {}), InvalidTopology);
}

TEST(GraphTopology, Factories) {
  EXPECT_EQ(GraphTopology::fully_connected(5).n_edges(), 10);
  EXPECT_EQ(GraphTopology::ring(4).n_edges(), 4);
  EXPECT_EQ(GraphTopology::ring(2).n_edges(), 1);
  EXPECT_EQ(GraphTopology::path(4).n_edges(), 3);
  EXPECT_EQ(GraphTopology::empty(4).n_edges(), 0);
}

TEST(SpinConfiguration, IndexRoundTrip) {
  for_all(50, 31, [](Rng& rng) {
    const int n = static_cast<int>(uniform_int(rng, 1, 8));
    const int m = static_cast<int>(uniform_int(rng, 0, 8));
    const auto b = static_cast<BasisIndex>(uniform_int(rng, 0, (std::int64_t{1} << (n + m)) - 1));
    const auto c = SpinConfiguration::from_index(b, n, m);
    EXPECT_EQ(c.basis_index(), b);
    EXPECT_EQ(c.vertex_string().size(), static_cast<std::size_t>(n));
  });
  const SpinConfiguration c{{true, false, false}, {false, true}};
  EXPECT_EQ(c.basis_index(), 1u + 16u);
  EXPECT_EQ(c.vertex_string(), "100");
  EXPECT_EQ(c.edge_string(), "01");
  const SpinConfiguration wide{std::vector<bool>(20, true), std::vector<bool>(12, false)};
  EXPECT_THROW(wide.basis_index(), DimensionOverflow);
}

// -- Phased permutations ------------------------------------------------------------------

PhasedPermutation random_perm(std::size_t n, Rng& rng) {
  std::vector<BasisIndex> t(n);
  std::vector<std::uint8_t> p(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = static_cast<BasisIndex>(k);
    p[k] = static_cast<std::uint8_t>(uniform_int(rng, 0, 3));
  }
  for (std::size_t k = n; k > 1; --k) std::swap(t[k - 1], t[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(k) - 1))]);
  return PhasedPermutation(t, p);
}

TEST(PhasedPermutation, RejectsNonBijections) {
  EXPECT_THROW(PhasedPermutation({0, 0}, {0, 0}), NotPermutation);
  EXPECT_THROW(PhasedPermutation({0, 2}, {0, 0}), NotPermutation);
  EXPECT_THROW(PhasedPermutation({0, 1}, {0}), Error);
}

TEST(PhasedPermutation, AlgebraMatchesDenseMatrices) {
  for_all(40, 32, [](Rng& rng) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 12));
    const PhasedPermutation a = random_perm(n, rng);
    const PhasedPermutation b = random_perm(n, rng);
    EXPECT_LT(max_abs(compose(a, b).dense() - a.dense() * b.dense()), 1e-15);
    EXPECT_LT(max_abs(a.inverse().dense() - a.dense().adjoint()), 1e-15);
    EXPECT_EQ(compose(a, a.inverse()), PhasedPermutation::identity(n));
    EXPECT_LT(max_abs(a.with_global_phase(1).dense() - C(0, 1) * a.dense()), 1e-15);
    EXPECT_LT(max_abs(power(a, 3).dense() - a.dense() * a.dense() * a.dense()), 1e-15);
    EXPECT_LT(max_abs(ComplexMatrix(a.sparse()) - a.dense()), 1e-15);
  });
}

TEST(PhasedPermutation, IterateFollowsTheOrbit) {
  const PhasedPermutation p({1, 2, 0}, {1, 0, 3});
  const auto orbit = iterate(p, {0, 0}, 3);
  ASSERT_EQ(orbit.size(), 4u);
  EXPECT_EQ(orbit[1], (PhasedState{1, 1}));
  EXPECT_EQ(orbit[2], (PhasedState{2, 1}));
  EXPECT_EQ(orbit[3], (PhasedState{0, 0}));
}

// -- Model A ------------------------------------------------------------------------------

TEST(ModelA, StepOperatorIsPhasedDoubleFlip) {
  const GraphTopology g = GraphTopology::fully_connected(3);
  for (const Edge e : g.edges()) {
    const ComplexMatrix xx = on_bits(3, {{e.i, pauli_x()}, {e.j, pauli_x()}});
    EXPECT_LT(max_abs(model_a_step_operator(g, e, 1).dense() - C(0, -1) * xx), 1e-15);
    EXPECT_LT(max_abs(model_a_step_operator(g, e, -1).dense() - C(0, 1) * xx), 1e-15);
  }
  EXPECT_THROW(model_a_step_operator(GraphTopology::path(3), {0, 2}, 1), EdgeNotInTopology);
  EXPECT_THROW(model_a_step_operator(g, {0, 1}, 2), InvalidSchedule);
}

TEST(ModelA, EvolveEqualsComposedSteps) {
  for_all(20, 33, [](Rng& rng) {
    const GraphTopology g = GraphTopology::ring(static_cast<int>(uniform_int(rng, 3, 6)));
    std::vector<ScheduledFlip> flips;
    const int len = static_cast<int>(uniform_int(rng, 1, 5));
    for (int k = 0; k < len; ++k) {
      flips.push_back({g.edges()[static_cast<std::size_t>(uniform_int(rng, 0, g.n_edges() - 1))],
                       uniform_int(rng, 0, 1) ? 1 : -1});
    }
    const Schedule s = Schedule::periodic(flips);
    const auto start = static_cast<BasisIndex>(uniform_int(rng, 0, g.vertex_mask()));
    const int steps = 9;
    const auto states = model_a_evolve(g, start, s, steps);
    ASSERT_EQ(states.size(), static_cast<std::size_t>(steps + 1));
    ComplexVector psi = ComplexVector::Zero(std::int64_t{1} << g.n_vertices());
    psi(start) = 1;
    const auto expanded = s.expand(steps);
    for (int n = 0; n < steps; ++n) {
      psi = model_a_step_operator(g, expanded[static_cast<std::size_t>(n)].edge,
                                  expanded[static_cast<std::size_t>(n)].sign).dense() * psi;
      const PhasedState st = states[static_cast<std::size_t>(n + 1)];
      const C phase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      EXPECT_LT(std::abs(psi(st.index) - phase[st.phase_exponent]), 1e-15);
    }
  });
}

TEST(ModelA, ScheduleKinds) {
  const GraphTopology g = GraphTopology::path(3);
  const std::vector<ScheduledFlip> pool{{{0, 1}, 1}, {{1, 2}, -1}};
  const auto p = Schedule::periodic(pool).expand(5);
  EXPECT_EQ(p[4].edge, (Edge{0, 1}));
  EXPECT_EQ(p[3].sign, -1);
  const auto r1 = Schedule::seeded_random(9, pool).expand(20);
  const auto r2 = Schedule::seeded_random(9, pool).expand(20);
  for (std::size_t k = 0; k < r1.size(); ++k) EXPECT_EQ(r1[k].edge, r2[k].edge);
  EXPECT_THROW(Schedule::explicit_steps(pool).expand(3), ScheduleExhausted);
  EXPECT_THROW(Schedule::periodic({}).expand(1), InvalidSchedule);
  EXPECT_THROW(Schedule::periodic({{{0, 2}, 1}}).validate(g), EdgeNotInTopology);
  EXPECT_THROW(Schedule::periodic({{{0, 1}, 0}}).validate(g), InvalidSchedule);
  EXPECT_THROW(model_a_evolve(g, 8, Schedule::periodic(pool), 2), DimensionMismatch);
}

// -- Model B ------------------------------------------------------------------------------

TEST(ModelB, FactorsMatchTheGatedOracle) {
  for (const GraphTopology& g : {GraphTopology::ring(3), GraphTopology::path(4), GraphTopology(4, {{0, 3}, {1, 2}})}) {
    ComplexMatrix product = ComplexMatrix::Identity(std::int64_t{1} << g.total_bits(), std::int64_t{1} << g.total_bits());
    for (int e = 0; e < g.n_edges(); ++e) {
      const ComplexMatrix oracle = edge_oracle(g, e);
      EXPECT_LT(max_abs(model_b_factor(g, e).dense() - oracle), 1e-15);
      product = oracle * product;
    }
    EXPECT_LT(max_abs(model_b_transfer(g).dense() - C(0, -1) * product), 1e-15);
    EXPECT_LT(max_abs(ComplexMatrix(model_b_matrix(g)) - C(0, -1) * product), 1e-15);
  }
}

TEST(ModelB, FactorsCommuteSoOrderDoesNotMatter) {
  const GraphTopology g = GraphTopology::fully_connected(3);
  const ComplexMatrix a(model_b_matrix(g, {0, 1, 2}));
  const ComplexMatrix b(model_b_matrix(g, {2, 0, 1}));
  EXPECT_LT(max_abs(a - b), 1e-15);
  EXPECT_THROW(model_b_matrix(g, {0, 0, 1}), InvalidTopology);
  EXPECT_THROW(model_b_matrix(g, {0, 1}), InvalidTopology);
}

TEST(ModelB, StructureAudit) {
  const auto good = model_b_matrix(GraphTopology::ring(3));
  EXPECT_TRUE(audit_phased_permutation(good).ok());
  Eigen::SparseMatrix<C> bad(2, 2);
  bad.insert(0, 0) = 1;
  bad.insert(1, 0) = 1;
  EXPECT_FALSE(audit_phased_permutation(bad).one_entry_per_row_and_column);
  Eigen::SparseMatrix<C> scaled(2, 2);
  scaled.insert(0, 0) = 2;
  scaled.insert(1, 1) = 1;
  EXPECT_FALSE(audit_phased_permutation(scaled).unit_modulus_entries);
  EXPECT_FALSE(audit_phased_permutation(scaled).ok());
}

TEST(ModelB, ExponentialForm) {
  for (const GraphTopology& g : {GraphTopology::ring(3), GraphTopology::path(2), GraphTopology::fully_connected(4)}) {
    const ExponentialFormReport r = verify_exponential_form(g);
    EXPECT_LT(r.max_deviation, 1e-9);
    EXPECT_NEAR(std::abs(r.global_phase), 1.0, 1e-12);
  }
  EXPECT_THROW(verify_exponential_form(GraphTopology::fully_connected(5)), DimensionOverflow);
}

TEST(ModelB, SizeLimits) {
  const GraphTopology g = GraphTopology::fully_connected(5);
  EXPECT_THROW(model_b_factor(g, 0, 12), DimensionOverflow);
  EXPECT_NO_THROW(model_b_factor(g, 0, 15));
  EXPECT_THROW(model_b_factor(g, 10), EdgeNotInTopology);
}

TEST(ModelB, ProjectorsAreIdempotent) {
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(projector_identity_check(k));
  EXPECT_THROW(projector_identity_check(0), DomainTooSmall);
}

TEST(ModelB, GaugeTransforms) {
  const GraphTopology g = GraphTopology::ring(3);
  EXPECT_TRUE(gauge_check(global_vertex_flip(g), g).commutes);
  EXPECT_TRUE(gauge_check(vertex_sigma1(g, 1), g).commutes);
  const GaugeReport z = gauge_check(vertex_sigma3(g, 0), g);
  EXPECT_FALSE(z.commutes);
  EXPECT_NEAR(z.max_commutator_entry, 2.0, 1e-15);
  EXPECT_TRUE(gauge_check(global_vertex_flip(g).dense(), g).commutes);
  EXPECT_THROW(gauge_check(PhasedPermutation::identity(4), g), DimensionMismatch);
  EXPECT_THROW(vertex_sigma1(g, 3), InvalidTopology);
}

TEST(ModelB, EdgeRules) {
  const GraphTopology g = GraphTopology::ring(3);
  const PhasedPermutation t = model_b_transfer(g);
  EXPECT_EQ(edge_update_compose(t, frozen_edges(g), g), t);
  const PhasedPermutation shift = cyclic_edge_shift(g);
  EXPECT_EQ(power(shift, 3), PhasedPermutation::identity(shift.size()));
  // Edge bits (0,1,2) = (1,0,0) move to (0,1,0).
  EXPECT_EQ(shift.target(BasisIndex{1} << 3), BasisIndex{1} << 4);
  const PhasedPermutation composed = edge_update_compose(t, shift, g);
  EXPECT_LT(max_abs(composed.dense() - shift.dense() * t.dense()), 1e-15);
  const PhasedPermutation r1 = random_edge_permutation(g, 4);
  EXPECT_EQ(r1, random_edge_permutation(g, 4));
  for (BasisIndex b = 0; b < r1.size(); ++b) EXPECT_EQ(r1.target(b) & g.vertex_mask(), b & g.vertex_mask());
  EXPECT_THROW(edge_update_compose(t, vertex_sigma1(g, 0), g), NotPermutation);
}

}  // namespace
}  // namespace ontoca
