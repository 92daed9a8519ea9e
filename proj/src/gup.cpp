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

#include "ontoca/gup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ontoca/errors.hpp"

namespace ontoca {

std::string to_string(Boundary boundary) {
  return boundary == Boundary::kPeriodic ? "periodic" : "open";
}

LatticeOperator::LatticeOperator(Sparse matrix, double scale, Boundary boundary)
    : matrix_(std::move(matrix)), scale_(scale), boundary_(boundary) {}

LatticeOperator LatticeOperator::position(int sites, DiscretenessScale scale, Boundary boundary) {
  if (sites < 2) throw DomainTooSmall("lattice needs at least two sites");
  Sparse x(sites, sites);
  for (int k = 0; k < sites; ++k) x.insert(k, k) = scale.value() * site_label(k, sites);
  x.makeCompressed();
  return LatticeOperator(std::move(x), scale.value(), boundary);
}

LatticeOperator LatticeOperator::momentum(int sites, DiscretenessScale scale, Boundary boundary) {
  if (sites < 3) throw DomainTooSmall("momentum needs at least three sites");
  const double l = scale.value();
  const std::complex<double> hop(0.0, 1.0 / (2.0 * l));
  std::vector<Eigen::Triplet<std::complex<double>>> entries;
  // P_{m,m+1} = -i/2l, P_{m,m-1} = +i/2l.
  for (int m = 0; m < sites; ++m) {
    const int up = m + 1;
    const int down = m - 1;
    if (up < sites) {
      entries.emplace_back(m, up, -hop);
    } else if (boundary == Boundary::kPeriodic) {
      entries.emplace_back(m, up - sites, -hop);
    }
    if (down >= 0) {
      entries.emplace_back(m, down, hop);
    } else if (boundary == Boundary::kPeriodic) {
      entries.emplace_back(m, down + sites, hop);
    }
  }
  Sparse p(sites, sites);
  p.setFromTriplets(entries.begin(), entries.end());
  return LatticeOperator(std::move(p), l, boundary);
}

LatticeOperator LatticeOperator::custom(ComplexMatrix matrix, DiscretenessScale scale,
                                        Boundary boundary) {
  if (matrix.rows() != matrix.cols()) throw DimensionMismatch("operator matrix is not square");
  return LatticeOperator(matrix.sparseView(), scale.value(), boundary);
}

LatticeState::LatticeState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0)) throw ZeroVector("lattice state has zero norm");
  amplitudes_ /= norm;
}

LatticeState LatticeState::site(int sites, int label) {
  const int k = label + sites / 2;
  if (k < 0 || k >= sites) throw DomainTooSmall("site label outside the lattice");
  ComplexVector v = ComplexVector::Zero(sites);
  v(k) = 1.0;
  return LatticeState(std::move(v));
}

LatticeState LatticeState::uniform(int sites) {
  return LatticeState(ComplexVector::Ones(sites));
}

LatticeState LatticeState::gaussian(int sites, double width, double k0) {
  ComplexVector v(sites);
  for (int k = 0; k < sites; ++k) {
    const double m = site_label(k, sites);
    v(k) = std::exp(-m * m / (4.0 * width * width)) * std::polar(1.0, k0 * m);
  }
  return LatticeState(std::move(v));
}

LatticeState LatticeState::cos_modulated(int sites, double width, double k0) {
  ComplexVector v(sites);
  for (int k = 0; k < sites; ++k) {
    const double m = site_label(k, sites);
    v(k) = std::exp(-m * m / (4.0 * width * width)) * std::cos(k0 * m);
  }
  return LatticeState(std::move(v));
}

LatticeState LatticeState::random(int sites, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(sites);
  for (int k = 0; k < sites; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = {re, im};
  }
  return LatticeState(std::move(v));
}

namespace {

void check_operator(const LatticeState& state, const LatticeOperator& op) {
  if (state.size() != op.size()) {
    throw DimensionMismatch("state has " + std::to_string(state.size()) +
                            " sites, operator " + std::to_string(op.size()));
  }
  if (self_adjoint_defect(op) != 0.0) throw NotSelfAdjoint("lattice operator is not self-adjoint");
}

}  // namespace

double self_adjoint_defect(const LatticeOperator& op) {
  const LatticeOperator::Sparse diff = op.matrix() - LatticeOperator::Sparse(op.matrix().adjoint());
  double worst = 0.0;
  for (Eigen::Index c = 0; c < diff.outerSize(); ++c) {
    for (LatticeOperator::Sparse::InnerIterator it(diff, c); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

Uncertainty uncertainty(const LatticeState& state, const LatticeOperator& op) {
  check_operator(state, op);
  const ComplexVector& psi = state.amplitudes();
  const ComplexVector a_psi = op.matrix() * psi;
  const double mean = psi.dot(a_psi).real();
  const double delta = (a_psi - mean * psi).norm();
  return {mean, delta};
}

RobertsonResult robertson_check(const LatticeState& state, const LatticeOperator& a,
                                const LatticeOperator& b) {
  const Uncertainty ua = uncertainty(state, a);
  const Uncertainty ub = uncertainty(state, b);
  const ComplexVector& psi = state.amplitudes();
  const ComplexVector ab_psi = a.matrix() * ComplexVector(b.matrix() * psi);
  const ComplexVector ba_psi = b.matrix() * ComplexVector(a.matrix() * psi);
  RobertsonResult r;
  r.lhs = ua.delta * ub.delta;
  r.rhs = std::abs(psi.dot(ab_psi - ba_psi)) / 2.0;
  r.holds = r.lhs >= r.rhs - kRobertsonSlack;
  return r;
}

GupBoundReport gup_bound_report(const LatticeState& state, DiscretenessScale scale,
                                Boundary boundary) {
  const int m = state.size();
  const LatticeOperator x = LatticeOperator::position(m, scale, boundary);
  const LatticeOperator p = LatticeOperator::momentum(m, scale, boundary);
  const RobertsonResult rob = robertson_check(state, x, p);
  const ComplexVector p_psi = p.matrix() * state.amplitudes();
  const double p2 = p_psi.squaredNorm();
  const double l = scale.value();
  GupBoundReport r;
  r.lhs = rob.lhs;
  r.robertson_rhs = rob.rhs;
  r.paper_rhs = 0.5 * std::abs(1.0 + 0.5 * l * l * p2);
  r.satisfies_paper_bound = r.lhs >= r.paper_rhs - kRobertsonSlack;
  return r;
}

BoundMinimum bound_minimum(DiscretenessScale scale) {
  const double l = scale.value();
  auto f = [l](double dp) { return 1.0 / (2.0 * dp) + 0.25 * l * l * dp; };
  BoundMinimum out;
  out.closed_form = l / std::sqrt(2.0);
  out.argmin_delta_p = std::sqrt(2.0) / l;

  // Bracket [a, b] around the minimum, then golden-section search.
  double a = out.argmin_delta_p * 1e-3;
  double b = out.argmin_delta_p * 1e3;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && (b - a) > 1e-15 * out.argmin_delta_p; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  out.numeric_argmin = 0.5 * (a + b);
  out.numeric = f(out.numeric_argmin);
  return out;
}

MinimizationReport minimize_delta_x(DiscretenessScale scale, const GaussianFamily& family) {
  if (family.grid < 3 || family.width_min <= 0.0 || family.width_max <= family.width_min ||
      family.k0_max <= family.k0_min) {
    throw FamilyTooNarrow("family parameter box is empty");
  }
  // Envelope beyond ~8 widths is below 1e-6 of the peak.
  if (16.0 * family.width_max > family.sites / 2.0) {
    throw DomainTooSmall("lattice of " + std::to_string(family.sites) +
                         " sites too small for width " + std::to_string(family.width_max));
  }
  const int m = family.sites;
  const LatticeOperator x = LatticeOperator::position(m, scale);
  const LatticeOperator p = LatticeOperator::momentum(m, scale);
  const double inf = std::numeric_limits<double>::infinity();

  auto objective = [&](double w, double k0) {
    const LatticeState s = LatticeState::cos_modulated(m, w, k0);
    const GupBoundReport r = gup_bound_report(s, scale);
    return r.satisfies_paper_bound ? uncertainty(s, x).delta : inf;
  };

  double w_lo = family.width_min, w_hi = family.width_max;
  double k_lo = family.k0_min, k_hi = family.k0_max;
  double best = inf, best_w = 0.0, best_k = 0.0;
  for (int round = 0; round <= family.refinements; ++round) {
    const int g = family.grid;
    for (int a = 0; a < g; ++a) {
      const double w = w_lo + (w_hi - w_lo) * a / (g - 1);
      for (int b = 0; b < g; ++b) {
        const double k0 = k_lo + (k_hi - k_lo) * b / (g - 1);
        const double v = objective(w, k0);
        if (v < best) {
          best = v;
          best_w = w;
          best_k = k0;
        }
      }
    }
    if (best == inf) break;
    const double w_span = (w_hi - w_lo) / 4.0;
    const double k_span = (k_hi - k_lo) / 4.0;
    w_lo = std::max(family.width_min, best_w - w_span);
    w_hi = std::min(family.width_max, best_w + w_span);
    k_lo = std::max(family.k0_min, best_k - k_span);
    k_hi = std::min(family.k0_max, best_k + k_span);
  }
  if (best == inf) throw FamilyTooNarrow("no family state satisfies the bound");
  const double w_tol = 1e-9 * (family.width_max - family.width_min);
  if (best_w <= family.width_min + w_tol || best_w >= family.width_max - w_tol) {
    throw FamilyTooNarrow("optimum width " + std::to_string(best_w) +
                          " sits on the family boundary");
  }

  MinimizationReport out;
  out.bound = bound_minimum(scale);
  const LatticeState s = LatticeState::cos_modulated(m, best_w, best_k);
  const GupBoundReport r = gup_bound_report(s, scale);
  out.realized_min_dx = best;
  out.realized_width = best_w;
  out.realized_k0 = best_k;
  out.realized_dp = uncertainty(s, p).delta;
  out.robertson_gap = r.lhs - r.robertson_rhs;
  out.relative_gap = best / out.bound.closed_form - 1.0;
  return out;
}

double commutator_algebra_deviation(int sites, DiscretenessScale scale, Boundary boundary) {
  const LatticeOperator x = LatticeOperator::position(sites, scale, boundary);
  const LatticeOperator p = LatticeOperator::momentum(sites, scale, boundary);
  const ComplexMatrix c = x.dense() * p.dense() - p.dense() * x.dense();
  ComplexMatrix expected = ComplexMatrix::Zero(sites, sites);
  for (int m = 0; m < sites; ++m) {
    if (m + 1 < sites) expected(m, m + 1) = {0.0, 0.5};
    if (m - 1 >= 0) expected(m, m - 1) = {0.0, 0.5};
  }
  double worst = 0.0;
  for (int m = 1; m + 1 < sites; ++m) {
    worst = std::max(worst, (c.row(m) - expected.row(m)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace ontoca
