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

#include "ontoca/evolution.hpp"

namespace ontoca {

CAPairState step(const CAPairState& pair, const HamiltonianModel& model, Direction direction) {
  return step(pair, model.H(), direction);
}

Trajectory evolve(const CAPairState& pair, const HamiltonianModel& model, int steps) {
  if (steps < 1) throw Error("evolve: steps must be >= 1");
  if (pair.prev.size() != model.dim() || pair.curr.size() != model.dim()) {
    throw DimensionMismatch("evolve: initial pair does not match the model dimension");
  }
  Trajectory traj{model, pair.index - 1, {}};
  traj.states.reserve(static_cast<std::size_t>(steps) + 2);
  traj.states.push_back(pair.prev);
  traj.states.push_back(pair.curr);
  CAPairState cur = pair;
  for (int k = 0; k < steps; ++k) {
    cur = step(cur, model.H(), Direction::kForward);
    traj.states.push_back(cur.curr);
  }
  return traj;
}

Evolver::Evolver(HamiltonianModel model, CAPairState pair)
    : model_(std::move(model)), pair_(std::move(pair)) {
  if (pair_.prev.size() != model_.dim() || pair_.curr.size() != model_.dim()) {
    throw DimensionMismatch("Evolver: initial pair does not match the model dimension");
  }
}

void Evolver::advance(Direction direction) { pair_ = step(pair_, model_.H(), direction); }

void Evolver::advance(int steps, Direction direction) {
  for (int k = 0; k < steps; ++k) advance(direction);
}

BigInt two_time_correlation(const CAPairState& pair) {
  if (pair.prev.size() != pair.curr.size()) {
    throw DimensionMismatch("two_time_correlation: pair components differ in length");
  }
  // psi_n^† psi_{n-1} + c.c. = 2 Re(psi_n^† psi_{n-1})
  BigInt acc = 0;
  for (Eigen::Index k = 0; k < pair.curr.size(); ++k) {
    acc += pair.curr(k).real() * pair.prev(k).real() + pair.curr(k).imag() * pair.prev(k).imag();
  }
  return 2 * acc;
}

BigInt squared_norm(const GaussianVector& v) {
  BigInt acc = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) acc += v(k).norm();
  return acc;
}

XpForm to_xp(const GaussianVector& v) {
  XpForm out{Vector<BigInt>(v.size()), Vector<BigInt>(v.size())};
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.x(k) = v(k).real();
    out.p(k) = v(k).imag();
  }
  return out;
}

GaussianVector from_xp(const XpForm& xp) {
  if (xp.x.size() != xp.p.size()) throw DimensionMismatch("from_xp: x and p differ in length");
  GaussianVector v(xp.x.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = GaussianInt(xp.x(k), xp.p(k));
  return v;
}

std::int64_t equation_residual_count(const Trajectory& trajectory) {
  std::int64_t nonzero = 0;
  const auto& s = trajectory.states;
  for (std::size_t n = 1; n + 1 < s.size(); ++n) {
    const GaussianVector r = s[n + 1] - s[n - 1] - apply_minus_i(trajectory.model.H(), s[n]);
    for (Eigen::Index k = 0; k < r.size(); ++k) nonzero += r(k).is_zero() ? 0 : 1;
  }
  return nonzero;
}

std::int64_t xp_residual_count(const Trajectory& trajectory) {
  const IntMatrix& S = trajectory.model.S();
  const IntMatrix& A = trajectory.model.A();
  std::int64_t nonzero = 0;
  const auto& s = trajectory.states;
  for (std::size_t n = 1; n + 1 < s.size(); ++n) {
    const XpForm before = to_xp(s[n - 1]);
    const XpForm now = to_xp(s[n]);
    const XpForm after = to_xp(s[n + 1]);
    const Vector<BigInt> rx = after.x - before.x - (S * now.p + A * now.x);
    const Vector<BigInt> rp = after.p - before.p - (-(S * now.x) + A * now.p);
    for (Eigen::Index k = 0; k < rx.size(); ++k) {
      nonzero += (rx(k) != 0 ? 1 : 0) + (rp(k) != 0 ? 1 : 0);
    }
  }
  return nonzero;
}

}  // namespace ontoca
