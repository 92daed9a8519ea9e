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

#ifndef ONTOCA_EVOLUTION_HPP_
#define ONTOCA_EVOLUTION_HPP_

#include <cstdint>
#include <vector>

#include "ontoca/errors.hpp"
#include "ontoca/gaussian.hpp"
#include "ontoca/hamiltonian.hpp"

namespace ontoca {

enum class Direction { kForward, kBackward };

/// Two consecutive states (psi_{n-1}, psi_n) of the second-order update.
/// `index` is n, the index of `curr`.
template <class Scalar>
struct PairState {
  Vector<Scalar> prev;
  Vector<Scalar> curr;
  std::int64_t index = 1;

  friend bool operator==(const PairState& a, const PairState& b) {
    return a.index == b.index && a.prev == b.prev && a.curr == b.curr;
  }
};

using CAPairState = PairState<GaussianInt>;

/// -iH·v, exact for Gaussian scalars.
template <class Derived, class VDerived>
auto apply_minus_i(const Eigen::MatrixBase<Derived>& H, const Eigen::MatrixBase<VDerived>& v) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> w = H * v;
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = minus_i_times(w(k));
  return w;
}

/// One update of psi_{n+1} - psi_{n-1} = -iH psi_n.
///
/// Forward maps (psi_{n-1}, psi_n) to (psi_n, psi_{n+1}); backward maps it to
/// (psi_{n-2}, psi_{n-1}) using psi_{n-2} = psi_n + iH psi_{n-1}. Neither
/// direction inverts H.
template <class Scalar, class Derived>
PairState<Scalar> step(const PairState<Scalar>& pair, const Eigen::MatrixBase<Derived>& H,
                       Direction direction) {
  if (H.rows() != H.cols() || pair.prev.size() != H.cols() || pair.curr.size() != H.cols()) {
    throw DimensionMismatch("step: state and Hamiltonian dimensions differ");
  }
  if (direction == Direction::kForward) {
    Vector<Scalar> next = pair.prev + apply_minus_i(H, pair.curr);
    return {pair.curr, std::move(next), pair.index + 1};
  }
  Vector<Scalar> before = pair.curr - apply_minus_i(H, pair.prev);
  return {std::move(before), pair.prev, pair.index - 1};
}

CAPairState step(const CAPairState& pair, const HamiltonianModel& model, Direction direction);

/// Stored sequence psi_{start}, psi_{start+1}, ... of one model.
struct Trajectory {
  HamiltonianModel model;
  std::int64_t start_index = 0;
  std::vector<GaussianVector> states;

  std::int64_t end_index() const {
    return start_index + static_cast<std::int64_t>(states.size()) - 1;
  }
  const GaussianVector& at(std::int64_t n) const {
    return states.at(static_cast<std::size_t>(n - start_index));
  }
};

/// Iterates `steps` times from the pair; returns steps + 2 states starting
/// at pair.index - 1.
Trajectory evolve(const CAPairState& pair, const HamiltonianModel& model, int steps);

/// Streaming evolution that keeps only the current pair.
class Evolver {
 public:
  Evolver(HamiltonianModel model, CAPairState pair);

  const CAPairState& state() const { return pair_; }
  const HamiltonianModel& model() const { return model_; }

  void advance(Direction direction = Direction::kForward);
  void advance(int steps, Direction direction);

 private:
  HamiltonianModel model_;
  CAPairState pair_;
};

/// Q_n = psi_n^† psi_{n-1} + psi_{n-1}^† psi_n, an exact integer.
///
/// Q_{n+1} - Q_n = i psi_n^†(H - H^†) psi_n, so Q is conserved for every
/// self-adjoint H.
BigInt two_time_correlation(const CAPairState& pair);

/// psi^† psi.
BigInt squared_norm(const GaussianVector& v);

/// Coordinate/momentum form psi = x + ip.
struct XpForm {
  Vector<BigInt> x;
  Vector<BigInt> p;

  friend bool operator==(const XpForm&, const XpForm&) = default;
};

XpForm to_xp(const GaussianVector& v);
GaussianVector from_xp(const XpForm& xp);

/// Number of nonzero components of psi_{n+1} - psi_{n-1} + iH psi_n over all
/// interior indices of the trajectory.
std::int64_t equation_residual_count(const Trajectory& trajectory);

/// Same check in the real form:
///   x_{n+1} - x_{n-1} = S p_n + A x_n,  p_{n+1} - p_{n-1} = -S x_n + A p_n.
std::int64_t xp_residual_count(const Trajectory& trajectory);

}  // namespace ontoca

#endif  // ONTOCA_EVOLUTION_HPP_
