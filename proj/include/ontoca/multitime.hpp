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

#ifndef ONTOCA_MULTITIME_HPP_
#define ONTOCA_MULTITIME_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "ontoca/errors.hpp"
#include "ontoca/evolution.hpp"
#include "ontoca/gaussian.hpp"

namespace ontoca {

/// (n1, n2) on the two-time lattice.
using LatticePoint = std::pair<std::int64_t, std::int64_t>;

enum class Axis { kN1, kN2 };

/// Bipartite wave function on a finite set of lattice points. Component
/// index of a stored vector is alpha1 · d2 + alpha2.
template <class Scalar>
class MultiTimeField {
 public:
  MultiTimeField(int d1, int d2) : d1_(d1), d2_(d2) {
    if (d1 < 1 || d2 < 1) throw DimensionMismatch("MultiTimeField: dimensions must be >= 1");
  }

  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int components() const { return d1_ * d2_; }

  void set(LatticePoint at, Vector<Scalar> value) {
    if (value.size() != components()) {
      throw DimensionMismatch("MultiTimeField: value has wrong number of components");
    }
    values_[at] = std::move(value);
  }
  bool contains(LatticePoint at) const { return values_.count(at) != 0; }
  const Vector<Scalar>& at(LatticePoint at) const {
    auto it = values_.find(at);
    if (it == values_.end()) throw GeometryMismatch("MultiTimeField: point not populated");
    return it->second;
  }
  std::size_t size() const { return values_.size(); }
  const std::map<LatticePoint, Vector<Scalar>>& values() const { return values_; }

 private:
  int d1_;
  int d2_;
  std::map<LatticePoint, Vector<Scalar>> values_;
};

/// Coupling H^{a1 a2 b1 b2} of a k-partite system, either the separable sum
/// H1⊗1⊗… + 1⊗H2⊗… + … or a dense self-adjoint matrix.
template <class Scalar>
class TensorHamiltonian {
 public:
  static TensorHamiltonian separable(std::vector<Matrix<Scalar>> factors) {
    if (factors.empty()) throw DimensionMismatch("TensorHamiltonian: no factors");
    TensorHamiltonian h;
    for (const auto& f : factors) {
      if (f.rows() != f.cols() || f.rows() == 0) {
        throw DimensionMismatch("TensorHamiltonian: factors must be square");
      }
      if (!is_self_adjoint(f)) throw NotSelfAdjoint("TensorHamiltonian: factor not self-adjoint");
      h.dims_.push_back(static_cast<int>(f.rows()));
    }
    const int total = std::accumulate(h.dims_.begin(), h.dims_.end(), 1, std::multiplies<>());
    h.dense_ = Matrix<Scalar>::Zero(total, total);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      Matrix<Scalar> term = Matrix<Scalar>::Identity(1, 1);
      for (std::size_t j = 0; j < factors.size(); ++j) {
        term = kron<Scalar>(term, j == k ? factors[j]
                                         : Matrix<Scalar>(Matrix<Scalar>::Identity(
                                               h.dims_[j], h.dims_[j])));
      }
      h.dense_ += term;
    }
    h.factors_ = std::move(factors);
    return h;
  }

  static TensorHamiltonian general(std::vector<int> dims, Matrix<Scalar> dense) {
    if (dims.empty()) throw DimensionMismatch("TensorHamiltonian: no subsystem dimensions");
    const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
    if (dense.rows() != total || dense.cols() != total) {
      throw DimensionMismatch("TensorHamiltonian: dense matrix does not match dimensions");
    }
    if (!is_self_adjoint(dense)) throw NotSelfAdjoint("TensorHamiltonian: not self-adjoint");
    TensorHamiltonian h;
    h.dims_ = std::move(dims);
    h.dense_ = std::move(dense);
    return h;
  }

  bool is_separable() const { return !factors_.empty(); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<Matrix<Scalar>>& factors() const { return factors_; }
  const Matrix<Scalar>& dense() const { return dense_; }
  int total_dim() const { return static_cast<int>(dense_.rows()); }

 private:
  TensorHamiltonian() = default;

  std::vector<int> dims_;
  std::vector<Matrix<Scalar>> factors_;
  Matrix<Scalar> dense_;
};

namespace detail {

template <class Scalar>
void check_bipartite(const MultiTimeField<Scalar>& field, const TensorHamiltonian<Scalar>& H) {
  if (H.dims().size() != 2 || H.dims()[0] != field.d1() || H.dims()[1] != field.d2()) {
    throw DimensionMismatch("multitime: Hamiltonian does not match the field dimensions");
  }
}

inline LatticePoint shifted(LatticePoint p, Axis axis, std::int64_t along, std::int64_t across) {
  return axis == Axis::kN1 ? LatticePoint{p.first + along, p.second + across}
                           : LatticePoint{p.first + across, p.second + along};
}

inline std::int64_t along(LatticePoint p, Axis axis) {
  return axis == Axis::kN1 ? p.first : p.second;
}
inline std::int64_t across(LatticePoint p, Axis axis) {
  return axis == Axis::kN1 ? p.second : p.first;
}

}  // namespace detail

/// Left-hand side minus right-hand side of the bipartite update at `center`:
///   psi(n1+1,n2) - psi(n1-1,n2) + psi(n1,n2+1) - psi(n1,n2-1) + iH psi(n1,n2).
/// Returns nullopt when one of the five stencil points is missing.
template <class Scalar>
std::optional<Vector<Scalar>> equation_residual(const MultiTimeField<Scalar>& field,
                                                const TensorHamiltonian<Scalar>& H,
                                                LatticePoint center) {
  const auto [n1, n2] = center;
  const std::array<LatticePoint, 5> pts{LatticePoint{n1 + 1, n2}, LatticePoint{n1 - 1, n2},
                                        LatticePoint{n1, n2 + 1}, LatticePoint{n1, n2 - 1},
                                        center};
  for (const auto& p : pts) {
    if (!field.contains(p)) return std::nullopt;
  }
  Vector<Scalar> r = field.at(pts[0]) - field.at(pts[1]) + field.at(pts[2]) - field.at(pts[3]) -
                     apply_minus_i(H.dense(), field.at(center));
  return r;
}

/// Centers whose full stencil is populated.
template <class Scalar>
std::vector<LatticePoint> interior_points(const MultiTimeField<Scalar>& field) {
  std::vector<LatticePoint> out;
  for (const auto& [p, v] : field.values()) {
    const auto [n1, n2] = p;
    if (field.contains({n1 + 1, n2}) && field.contains({n1 - 1, n2}) &&
        field.contains({n1, n2 + 1}) && field.contains({n1, n2 - 1})) {
      out.push_back(p);
    }
  }
  return out;
}

/// Largest residual component modulus over every interior point.
template <class Scalar>
double max_equation_residual(const MultiTimeField<Scalar>& field,
                             const TensorHamiltonian<Scalar>& H) {
  double worst = 0.0;
  for (const auto& p : interior_points(field)) {
    const auto r = equation_residual(field, H, p);
    for (Eigen::Index k = 0; k < r->size(); ++k) worst = std::max(worst, std::abs(to_complex((*r)(k))));
  }
  return worst;
}

struct LineOptions {
  /// Wrap the across-coordinate inside the populated range of the current
  /// line instead of shrinking it.
  bool periodic = false;
};

/// Computes the next line of constant `axis`-coordinate from the two extreme
/// lines in `direction` (+1 or -1) and returns the field extended by it.
///
/// Without the periodic option the new line loses one point at each end, so
/// two lines of length L give L - 2 points. Throws DomainTooSmall when that
/// would leave no point and GeometryMismatch when the two lines are not
/// adjacent, not contiguous, or do not overlap.
template <class Scalar>
MultiTimeField<Scalar> propagate_line(const MultiTimeField<Scalar>& field,
                                      const TensorHamiltonian<Scalar>& H, Axis axis,
                                      int direction, LineOptions options = {}) {
  detail::check_bipartite(field, H);
  if (direction != 1 && direction != -1) throw GeometryMismatch("propagate_line: direction ±1");
  if (field.size() == 0) throw GeometryMismatch("propagate_line: empty field");

  std::set<std::int64_t> levels;
  for (const auto& [p, v] : field.values()) levels.insert(detail::along(p, axis));
  const std::int64_t current = direction > 0 ? *levels.rbegin() : *levels.begin();
  const std::int64_t previous = current - direction;
  if (!levels.count(previous)) {
    throw GeometryMismatch("propagate_line: needs two adjacent populated lines");
  }

  std::vector<std::int64_t> line;
  for (const auto& [p, v] : field.values()) {
    if (detail::along(p, axis) == current) line.push_back(detail::across(p, axis));
  }
  std::sort(line.begin(), line.end());
  const std::int64_t lo = line.front();
  const std::int64_t hi = line.back();
  if (hi - lo + 1 != static_cast<std::int64_t>(line.size())) {
    throw GeometryMismatch("propagate_line: current line is not contiguous");
  }
  const std::int64_t length = hi - lo + 1;
  const std::int64_t first = options.periodic ? lo : lo + 1;
  const std::int64_t last = options.periodic ? hi : hi - 1;
  if (last < first) throw DomainTooSmall("propagate_line: line too short to propagate");

  auto wrap = [&](std::int64_t c) {
    if (!options.periodic) return c;
    return lo + ((c - lo) % length + length) % length;
  };
  auto point = [&](std::int64_t level, std::int64_t c) {
    return axis == Axis::kN1 ? LatticePoint{level, c} : LatticePoint{c, level};
  };

  MultiTimeField<Scalar> out = field;
  for (std::int64_t c = first; c <= last; ++c) {
    const LatticePoint prev_pt = point(previous, c);
    if (!field.contains(prev_pt)) {
      throw GeometryMismatch("propagate_line: previous line does not cover the current one");
    }
    const Vector<Scalar>& centre = field.at(point(current, c));
    // X = [psi(c+1) - psi(c-1)]_across + iH psi(centre);  new = prev - direction · X
    Vector<Scalar> x = field.at(point(current, wrap(c + 1))) -
                       field.at(point(current, wrap(c - 1))) - apply_minus_i(H.dense(), centre);
    Vector<Scalar> next = field.at(prev_pt);
    if (direction > 0) {
      next -= x;
    } else {
      next += x;
    }
    out.set(point(current + direction, c), std::move(next));
  }
  return out;
}

/// Initial value on the third diagonal for propagate_diagonal().
template <class Scalar>
struct ExtraPoint {
  LatticePoint at;
  Vector<Scalar> value;
};

/// Propagation from two adjacent anti-diagonals n1 + n2 = s - 1, s plus one
/// point on s + 1. Every center (n1, n2) on diagonal s ties two neighbours:
///   psi(n1+1,n2) + psi(n1,n2+1) = psi(n1-1,n2) + psi(n1,n2-1) - iH psi(n1,n2),
/// so the extra point fixes diagonal s + 1 one step at a time in both
/// directions, as far as the populated centers reach.
///
/// When `extra` is empty the field itself must contain exactly one point on
/// the diagonal after its two full ones; otherwise MissingExtraPoint.
template <class Scalar>
MultiTimeField<Scalar> propagate_diagonal(const MultiTimeField<Scalar>& field,
                                          const TensorHamiltonian<Scalar>& H,
                                          std::optional<ExtraPoint<Scalar>> extra = std::nullopt) {
  detail::check_bipartite(field, H);
  std::map<std::int64_t, std::vector<std::int64_t>> diagonals;  // sum -> sorted n1 values
  for (const auto& [p, v] : field.values()) diagonals[p.first + p.second].push_back(p.first);

  MultiTimeField<Scalar> out = field;
  if (!extra) {
    if (diagonals.size() < 3 || diagonals.rbegin()->second.size() != 1) {
      throw MissingExtraPoint("propagate_diagonal: no extra point on the third diagonal");
    }
    const std::int64_t n1 = diagonals.rbegin()->second.front();
    const std::int64_t sum = diagonals.rbegin()->first;
    extra = ExtraPoint<Scalar>{{n1, sum - n1}, field.at({n1, sum - n1})};
    diagonals.erase(sum);
  }
  if (extra->value.size() != field.components()) {
    throw DimensionMismatch("propagate_diagonal: extra point has wrong number of components");
  }
  const std::int64_t s = extra->at.first + extra->at.second - 1;
  if (!diagonals.count(s) || !diagonals.count(s - 1) || diagonals.rbegin()->first != s) {
    throw GeometryMismatch("propagate_diagonal: extra point is not next to two full diagonals");
  }

  auto computable = [&](std::int64_t n1) {
    const std::int64_t n2 = s - n1;
    return field.contains({n1, n2}) && field.contains({n1 - 1, n2}) &&
           field.contains({n1, n2 - 1});
  };
  auto rhs = [&](std::int64_t n1) -> Vector<Scalar> {
    const std::int64_t n2 = s - n1;
    return field.at({n1 - 1, n2}) + field.at({n1, n2 - 1}) +
           apply_minus_i(H.dense(), field.at({n1, n2}));
  };
  auto on_next = [&](std::int64_t k) { return LatticePoint{k, s + 1 - k}; };

  const std::int64_t k0 = extra->at.first;
  if (!computable(k0) && !computable(k0 - 1)) {
    throw GeometryMismatch("propagate_diagonal: extra point has no populated neighbour center");
  }
  out.set(extra->at, extra->value);
  // Center n1 links P(n1) = psi(n1, s+1-n1) and P(n1+1) = psi(n1+1, s-n1).
  Vector<Scalar> value = extra->value;
  for (std::int64_t k = k0; computable(k); ++k) {
    value = rhs(k) - value;
    out.set(on_next(k + 1), value);
  }
  value = extra->value;
  for (std::int64_t k = k0; computable(k - 1); --k) {
    value = rhs(k - 1) - value;
    out.set(on_next(k - 1), value);
  }
  return out;
}

/// psi(n1+1, n2+1) = psi(n1-1, n2-1) - iH psi(n1, n2): the second-order
/// single-time update along the main diagonal.
template <class Scalar>
Vector<Scalar> sync_second_order(const Vector<Scalar>& prev, const Vector<Scalar>& curr,
                                 const TensorHamiltonian<Scalar>& H) {
  return step(PairState<Scalar>{prev, curr, 1}, H.dense(), Direction::kForward).curr;
}

enum class SyncKind { kFree, kDiagonalSecondOrder, kDiagonalFirstOrder };

/// Synchronization choice plus the lattice offsets of the single effective
/// time n: (n1, n2) = (n + m1, n + m2). The offsets are bookkeeping only.
struct SyncMode {
  SyncKind kind = SyncKind::kDiagonalFirstOrder;
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;

  LatticePoint lattice_point(std::int64_t n) const { return {n + m1, n + m2}; }
};

/// Iterates psi -> -iH psi `steps` times; returns steps + 1 states. With
/// direction -1 the same map produces psi_{n-1} from psi_n (the constraint
/// written with psi(n1-1, n2-1) on its right-hand side).
template <class Scalar>
std::vector<Vector<Scalar>> sync_first_order(const Vector<Scalar>& state,
                                             const TensorHamiltonian<Scalar>& H, int steps,
                                             int direction = 1) {
  if (state.size() != H.total_dim()) throw DimensionMismatch("sync_first_order: dimension");
  if (steps < 1) throw Error("sync_first_order: steps must be >= 1");
  if (direction != 1 && direction != -1) throw Error("sync_first_order: direction must be ±1");
  std::vector<Vector<Scalar>> out{state};
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k < steps; ++k) out.push_back(apply_minus_i(H.dense(), out.back()));
  return out;
}

/// Rank of the d1×d2 coefficient matrix of a bipartite state, counting
/// singular values above 1e-10 of the largest.
int schmidt_rank(const ComplexVector& state, int d1, int d2);

template <class T>
int schmidt_rank(const Vector<Gaussian<T>>& state, int d1, int d2) {
  ComplexVector c(state.size());
  for (Eigen::Index k = 0; k < state.size(); ++k) c(k) = to_complex(state(k));
  return schmidt_rank(c, d1, d2);
}

enum class Sublattice { kEven, kOdd };

inline Sublattice sublattice(LatticePoint p) {
  return ((p.first + p.second) % 2 == 0) ? Sublattice::kEven : Sublattice::kOdd;
}

/// Points of the first-order synchronization constraint around an odd center:
/// the four difference points (a square on the even sublattice) and the
/// diagonal successor on the odd sublattice.
struct SyncStencil {
  LatticePoint center;
  std::array<LatticePoint, 4> lhs;
  LatticePoint rhs;
};

SyncStencil first_order_stencil(LatticePoint center);

/// Product field psi(n1, n2) = phi1_{n1} ⊗ phi2_{n2}.
template <class Scalar>
MultiTimeField<Scalar> product_field(const std::vector<Vector<Scalar>>& phi1, std::int64_t start1,
                                     const std::vector<Vector<Scalar>>& phi2, std::int64_t start2) {
  if (phi1.empty() || phi2.empty()) throw DimensionMismatch("product_field: empty factor");
  MultiTimeField<Scalar> field(static_cast<int>(phi1.front().size()),
                               static_cast<int>(phi2.front().size()));
  for (std::size_t a = 0; a < phi1.size(); ++a) {
    for (std::size_t b = 0; b < phi2.size(); ++b) {
      field.set({start1 + static_cast<std::int64_t>(a), start2 + static_cast<std::int64_t>(b)},
                kron<Scalar>(phi1[a], phi2[b]));
    }
  }
  return field;
}

/// Outcome of the finite-difference product-rule comparison.
struct LeibnizReport {
  /// Modified rule with averaged neighbours; exact zero expected everywhere.
  bool modified_rule_exact = false;
  double modified_residual_max = 0.0;
  /// Naive rule d[f g] = df·g + f·dg.
  std::int64_t naive_nonzero_points = 0;
  double naive_residual_max = 0.0;
};

/// Checks, at every interior n, with df_n = f_{n+1} - f_{n-1},
///   d[f g]_n = df_n (g_{n+1} + g_{n-1})/2 + (f_{n+1} + f_{n-1})/2 dg_n
/// exactly, and reports how far the naive rule misses. Scalar must be an
/// exact field (BigRational or GaussianRational).
template <class Scalar>
LeibnizReport leibniz_identity_check(const std::vector<Scalar>& f, const std::vector<Scalar>& g) {
  if (f.size() != g.size()) throw DimensionMismatch("leibniz_identity_check: lengths differ");
  if (f.size() < 3) throw LengthTooShort("leibniz_identity_check: need at least 3 values");
  auto magnitude = [](const Scalar& z) {
    if constexpr (std::is_same_v<Scalar, BigRational>) {
      return std::abs(static_cast<double>(z));
    } else {
      return std::abs(to_complex(z));
    }
  };
  const Scalar half = Scalar(BigRational(1, 2));
  LeibnizReport report;
  report.modified_rule_exact = true;
  for (std::size_t n = 1; n + 1 < f.size(); ++n) {
    const Scalar df = f[n + 1] - f[n - 1];
    const Scalar dg = g[n + 1] - g[n - 1];
    const Scalar dfg = f[n + 1] * g[n + 1] - f[n - 1] * g[n - 1];
    const Scalar modified = df * ((g[n + 1] + g[n - 1]) * half) + ((f[n + 1] + f[n - 1]) * half) * dg;
    const Scalar naive = df * g[n] + f[n] * dg;
    const Scalar r_mod = dfg - modified;
    const Scalar r_naive = dfg - naive;
    if (r_mod != Scalar(0)) report.modified_rule_exact = false;
    if (r_naive != Scalar(0)) ++report.naive_nonzero_points;
    report.modified_residual_max = std::max(report.modified_residual_max, magnitude(r_mod));
    report.naive_residual_max = std::max(report.naive_residual_max, magnitude(r_naive));
  }
  return report;
}

}  // namespace ontoca

#endif  // ONTOCA_MULTITIME_HPP_
