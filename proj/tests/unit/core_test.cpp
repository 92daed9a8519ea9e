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

#include "ontoca/errors.hpp"
#include "ontoca/evolution.hpp"
#include "ontoca/hamiltonian.hpp"
#include "ontoca/ontology.hpp"
#include "property.hpp"

namespace ontoca {
namespace {

using testing::for_all;
using testing::gvec;
using testing::random_gaussian_int;
using testing::unit_vector;

const GaussianInt kI = GaussianInt::i();
const GaussianInt kOne(1);

// -- Gaussian integers --------------------------------------------------------

TEST(GaussianInt, ToStringForms) {
  EXPECT_EQ(GaussianInt(0).to_string(), "0");
  EXPECT_EQ(GaussianInt(3).to_string(), "3");
  EXPECT_EQ((-kI).to_string(), "-i");
  EXPECT_EQ((kOne - kI).to_string(), "1-i");
  EXPECT_EQ(GaussianInt(BigInt(-2), BigInt(5)).to_string(), "-2+5i");
  const GaussianRational half(BigRational(1, 2), BigRational(1, 2));
  EXPECT_EQ(half.to_string(), "1/2+1/2i");
}

TEST(GaussianInt, RingLawsHoldExactly) {
  for_all(200, 1, [](Rng& rng) {
    const GaussianInt a = random_gaussian_int(rng, 50);
    const GaussianInt b = random_gaussian_int(rng, 50);
    const GaussianInt c = random_gaussian_int(rng, 50);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    EXPECT_EQ(a.times_i(), kI * a);
    EXPECT_EQ(a.times_minus_i(), -kI * a);
  });
}

TEST(GaussianRational, DivisionInvertsMultiplication) {
  for_all(100, 2, [](Rng& rng) {
    const GaussianRational a = to_rational(random_gaussian_int(rng, 20));
    GaussianInt bi = random_gaussian_int(rng, 20);
    if (bi.is_zero()) bi = kOne;
    const GaussianRational b = to_rational(bi);
    EXPECT_EQ((a / b) * b, a);
  });
}

TEST(Kron, IndexLayoutIsRowMajorInFactors) {
  const GaussianVector a = gvec({GaussianInt(1), GaussianInt(2)});
  const GaussianVector b = gvec({GaussianInt(3), kI, GaussianInt(5)});
  const GaussianVector ab = kron<GaussianInt>(a, b);
  ASSERT_EQ(ab.size(), 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(ab(i * 3 + j), a(i) * b(j));
  }
}

// -- Hamiltonian ----------------------------------------------------------------

TEST(BuildHamiltonian, SigmaOne) {
  Eigen::MatrixXi s(2, 2), a = Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 2));
  s << 0, 1, 1, 0;
  const HamiltonianModel m = build_hamiltonian(s, a);
  EXPECT_EQ(m.dim(), 2);
  EXPECT_EQ(m.H()(0, 1), kOne);
  EXPECT_EQ(m.H()(1, 0), kOne);
  EXPECT_TRUE(m.H()(0, 0).is_zero());
  EXPECT_TRUE(is_self_adjoint(m.H()));
}

TEST(BuildHamiltonian, ZeroModel) {
  const HamiltonianModel m = build_hamiltonian(Eigen::MatrixXi(Eigen::MatrixXi::Zero(3, 3)), Eigen::MatrixXi(Eigen::MatrixXi::Zero(3, 3)));
  for (Eigen::Index r = 0; r < 3; ++r) {
    for (Eigen::Index c = 0; c < 3; ++c) EXPECT_TRUE(m.H()(r, c).is_zero());
  }
}

TEST(BuildHamiltonian, RejectsAsymmetricS) {
  Eigen::MatrixXi s(2, 2);
  s << 0, 1, 0, 0;
  try {
    build_hamiltonian(s, Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 2)));
    FAIL() << "expected SymmetryViolation";
  } catch (const SymmetryViolation& e) {
    EXPECT_EQ(e.row(), 0);
    EXPECT_EQ(e.col(), 1);
  }
}

TEST(BuildHamiltonian, RejectsNonAntisymmetricA) {
  Eigen::MatrixXi a(2, 2);
  a << 1, 0, 0, 0;  // diagonal of A must vanish
  EXPECT_THROW(build_hamiltonian(Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 2)), a), SymmetryViolation);
}

TEST(BuildHamiltonian, RejectsShapeProblems) {
  EXPECT_THROW(build_hamiltonian(Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 2)), Eigen::MatrixXi(Eigen::MatrixXi::Zero(3, 3))), DimensionMismatch);
  EXPECT_THROW(build_hamiltonian(Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 3)), Eigen::MatrixXi(Eigen::MatrixXi::Zero(2, 3))), DimensionMismatch);
  EXPECT_THROW(build_hamiltonian(Eigen::MatrixXi(Eigen::MatrixXi::Zero(0, 0)), Eigen::MatrixXi(Eigen::MatrixXi::Zero(0, 0))), DimensionMismatch);
}

TEST(BuildHamiltonian, RandomModelsAreSelfAdjoint) {
  for_all(50, 3, [](Rng& rng) {
    const HamiltonianModel m = random_model(static_cast<int>(uniform_int(rng, 1, 6)), 3, rng);
    EXPECT_TRUE(is_self_adjoint(m.H()));
    EXPECT_TRUE(m.H_complex().isApprox(m.H_complex().adjoint()));
  });
}

// -- Single steps ---------------------------------------------------------------

TEST(Step, SigmaOneFirstStep) {
  const CAPairState p{unit_vector(2, 0), unit_vector(2, 1), 1};
  const CAPairState q = step(p, preset_hamiltonian("H2"), Direction::kForward);
  EXPECT_EQ(q.curr, gvec({kOne - kI, GaussianInt(0)}));
  EXPECT_EQ(q.prev, p.curr);
  EXPECT_EQ(q.index, 2);
}

TEST(Step, ZeroHamiltonianAlternates) {
  for_all(20, 4, [](Rng& rng) {
    const int dim = static_cast<int>(uniform_int(rng, 1, 5));
    const CAPairState p{random_gaussian_vector(dim, 5, rng), random_gaussian_vector(dim, 5, rng), 1};
    const CAPairState q = step(p, zero_hamiltonian(dim), Direction::kForward);
    EXPECT_EQ(q.curr, p.prev);
  });
}

TEST(Step, ForwardThenBackwardIsIdentity) {
  for_all(100, 5, [](Rng& rng) {
    const int dim = static_cast<int>(uniform_int(rng, 1, 6));
    const HamiltonianModel m = random_model(dim, 4, rng);
    const CAPairState p{random_gaussian_vector(dim, 6, rng), random_gaussian_vector(dim, 6, rng), 7};
    EXPECT_EQ(step(step(p, m, Direction::kForward), m, Direction::kBackward), p);
    EXPECT_EQ(step(step(p, m, Direction::kBackward), m, Direction::kForward), p);
  });
}

TEST(Step, DimensionMismatchIsRejected) {
  const CAPairState p{unit_vector(3, 0), unit_vector(3, 1), 1};
  EXPECT_THROW(step(p, preset_hamiltonian("H2"), Direction::kForward), DimensionMismatch);
}

// -- Trajectories -----------------------------------------------------------------

TEST(Evolve, SigmaOneSequenceAndReturn) {
  const GaussianVector e0 = unit_vector(2, 0);
  const GaussianVector e1 = unit_vector(2, 1);
  const Trajectory t = evolve(CAPairState{e0, e1, 1}, preset_hamiltonian("H2"), 11);
  ASSERT_EQ(t.states.size(), 13u);
  EXPECT_EQ(t.start_index, 0);
  EXPECT_EQ(t.end_index(), 12);
  EXPECT_EQ(t.at(2), (kOne - kI) * e0);
  EXPECT_EQ(t.at(3), (-kI) * e1);
  EXPECT_EQ(t.at(4), (-kI) * e0);
  EXPECT_EQ(t.at(5), (-(kOne + kI)) * e1);
  EXPECT_EQ(t.at(6), (-kOne) * e0);
  EXPECT_EQ(t.at(7), (-kOne) * e1);
  EXPECT_EQ(t.at(12), e0);
  const Trajectory longer = evolve(CAPairState{e0, e1, 1}, preset_hamiltonian("H2"), 12);
  EXPECT_EQ(longer.at(13), e1);
}

TEST(Evolve, ZeroHamiltonianAlternatesPair) {
  const GaussianVector e0 = unit_vector(2, 0);
  const GaussianVector e1 = unit_vector(2, 1);
  const Trajectory t = evolve(CAPairState{e0, e1, 1}, zero_hamiltonian(2), 4);
  ASSERT_EQ(t.states.size(), 6u);
  for (std::size_t n = 0; n < t.states.size(); ++n) EXPECT_EQ(t.states[n], n % 2 == 0 ? e0 : e1);
}

TEST(Evolve, LongRandomRunSatisfiesUpdateExactly) {
  Rng rng(6);
  const HamiltonianModel m = random_model(5, 3, rng);
  const Trajectory t = evolve(CAPairState{random_gaussian_vector(5, 3, rng), random_gaussian_vector(5, 3, rng), 1}, m, 1000);
  EXPECT_EQ(equation_residual_count(t), 0);
  EXPECT_EQ(xp_residual_count(t), 0);
  // Spot check one triple by hand.
  const GaussianVector lhs = t.at(501);
  const GaussianVector rhs = t.at(499) - GaussianVector(m.H() * t.at(500)) * kI;
  EXPECT_EQ(lhs, rhs);
}

TEST(Evolve, RejectsBadArguments) {
  const CAPairState p{unit_vector(2, 0), unit_vector(2, 1), 1};
  EXPECT_THROW(evolve(p, preset_hamiltonian("H2"), 0), Error);
  EXPECT_THROW(evolve(p, preset_hamiltonian("H3"), 3), DimensionMismatch);
}

TEST(Evolve, TamperedTrajectoryIsDetected) {
  Trajectory t = evolve(CAPairState{unit_vector(2, 0), unit_vector(2, 1), 1}, preset_hamiltonian("H2"), 6);
  t.states[4](1) += kOne;
  EXPECT_GT(equation_residual_count(t), 0);
  EXPECT_GT(xp_residual_count(t), 0);
}

TEST(Evolver, MatchesEvolveAndRunsBackward) {
  Rng rng(7);
  const HamiltonianModel m = random_model(3, 2, rng);
  const CAPairState start{random_gaussian_vector(3, 3, rng), random_gaussian_vector(3, 3, rng), 1};
  const Trajectory t = evolve(start, m, 25);
  Evolver ev(m, start);
  ev.advance(25, Direction::kForward);
  EXPECT_EQ(ev.state().curr, t.states.back());
  EXPECT_EQ(ev.state().index, 26);
  ev.advance(25, Direction::kBackward);
  EXPECT_EQ(ev.state(), start);
}

// -- Conserved two-time correlation -------------------------------------------------

TEST(TwoTimeCorrelation, Examples) {
  const GaussianVector e0 = unit_vector(2, 0);
  const GaussianVector e1 = unit_vector(2, 1);
  EXPECT_EQ(two_time_correlation({e0, e1, 1}), 0);
  Evolver ev(preset_hamiltonian("H2"), {e0, e1, 1});
  for (int k = 0; k < 12; ++k) {
    ev.advance();
    EXPECT_EQ(two_time_correlation(ev.state()), 0);
  }
  Evolver same(preset_hamiltonian("H2"), {e0, e0, 1});
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(two_time_correlation(same.state()), 2);
    same.advance();
  }
  const GaussianVector z = GaussianVector::Constant(2, GaussianInt(0));
  EXPECT_EQ(two_time_correlation({z, z, 1}), 0);
}

TEST(TwoTimeCorrelation, ConservedForRandomModels) {
  for_all(30, 8, [](Rng& rng) {
    const int dim = static_cast<int>(uniform_int(rng, 1, 6));
    const HamiltonianModel m = random_model(dim, 3, rng);
    Evolver ev(m, {random_gaussian_vector(dim, 5, rng), random_gaussian_vector(dim, 5, rng), 1});
    const BigInt q = two_time_correlation(ev.state());
    for (int k = 0; k < 60; ++k) {
      ev.advance();
      ASSERT_EQ(two_time_correlation(ev.state()), q);
    }
  });
}

TEST(TwoTimeCorrelation, BrokenByNonHermitianUpdate) {
  // With a non-self-adjoint matrix the same recurrence no longer conserves Q.
  GaussianMatrix h(2, 2);
  h << GaussianInt(0), GaussianInt(1), GaussianInt(0), GaussianInt(0);
  PairState<GaussianInt> p{unit_vector(2, 0), gvec({kOne, kI}), 1};
  const BigInt q0 = two_time_correlation(p);
  bool changed = false;
  for (int k = 0; k < 5; ++k) {
    p = step(p, h, Direction::kForward);
    changed = changed || two_time_correlation(p) != q0;
  }
  EXPECT_TRUE(changed);
}

// -- Real form ----------------------------------------------------------------------

TEST(XpForm, SplitsRealAndImaginaryParts) {
  const XpForm xp = to_xp(gvec({kOne - kI, GaussianInt(0)}));
  EXPECT_EQ(xp.x(0), 1);
  EXPECT_EQ(xp.p(0), -1);
  EXPECT_EQ(xp.x(1), 0);
  EXPECT_EQ(xp.p(1), 0);
}

TEST(XpForm, RoundTrip) {
  for_all(50, 9, [](Rng& rng) {
    const GaussianVector v = random_gaussian_vector(static_cast<int>(uniform_int(rng, 1, 8)), 100, rng);
    EXPECT_EQ(from_xp(to_xp(v)), v);
  });
}

TEST(SquaredNorm, MatchesComponentSum) {
  EXPECT_EQ(squared_norm(gvec({kOne - kI, GaussianInt(3)})), 11);
}

}  // namespace
}  // namespace ontoca
