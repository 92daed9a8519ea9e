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

// Position and momentum on a finite spatial lattice, and uncertainty
// relations built from them.
//
// Sites carry labels m = -M/2 .. M/2 - 1; row/column k of every matrix is the
// site with label k - M/2.

#ifndef ONTOCA_GUP_HPP_
#define ONTOCA_GUP_HPP_

#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/SparseCore>

#include "ontoca/gaussian.hpp"
#include "ontoca/propagator.hpp"

namespace ontoca {

enum class Boundary { kPeriodic, kOpen };

std::string to_string(Boundary boundary);

class LatticeOperator {
 public:
  /// X_mn = l m delta_mn.
  static LatticeOperator position(int sites, DiscretenessScale scale,
                                  Boundary boundary = Boundary::kPeriodic);
  /// P_mn = -i(delta_{m,n-1} - delta_{m,n+1}) / 2l, wrapped when periodic.
  static LatticeOperator momentum(int sites, DiscretenessScale scale,
                                  Boundary boundary = Boundary::kPeriodic);
  /// Arbitrary square matrix; self-adjointness is checked where it matters.
  static LatticeOperator custom(ComplexMatrix matrix, DiscretenessScale scale,
                                Boundary boundary = Boundary::kPeriodic);

  using Sparse = Eigen::SparseMatrix<std::complex<double>>;

  int size() const { return static_cast<int>(matrix_.rows()); }
  double scale() const { return scale_; }
  Boundary boundary() const { return boundary_; }
  const Sparse& matrix() const { return matrix_; }
  ComplexMatrix dense() const { return ComplexMatrix(matrix_); }

 private:
  LatticeOperator(Sparse matrix, double scale, Boundary boundary);

  Sparse matrix_;
  double scale_;
  Boundary boundary_;
};

inline int site_label(int index, int sites) { return index - sites / 2; }

/// Unit-norm amplitudes on M sites.
class LatticeState {
 public:
  /// Normalizes; throws ZeroVector for the zero vector.
  explicit LatticeState(ComplexVector amplitudes);

  /// delta at site label m.
  static LatticeState site(int sites, int label);
  static LatticeState uniform(int sites);
  /// exp(-m^2 / 4w^2) exp(i k0 m), centred on label 0.
  static LatticeState gaussian(int sites, double width, double k0 = 0.0);
  /// exp(-m^2 / 4w^2) cos(k0 m). Real, hence <P> = 0.
  static LatticeState cos_modulated(int sites, double width, double k0);
  /// Independent standard normal real and imaginary parts, normalized.
  static LatticeState random(int sites, std::mt19937_64& rng);

  int size() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

struct Uncertainty {
  double mean = 0.0;
  double delta = 0.0;
};

/// <A> and ΔA = ||(A - <A>) psi||. Throws DimensionMismatch, NotSelfAdjoint.
Uncertainty uncertainty(const LatticeState& state, const LatticeOperator& op);

struct RobertsonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kRobertsonSlack = 1e-12;

/// ΔA ΔB against |<[A,B]>| / 2, with <[A,B]> = <psi|AB|psi> - <psi|BA|psi>
/// evaluated through the operator matrices.
RobertsonResult robertson_check(const LatticeState& state, const LatticeOperator& a,
                                const LatticeOperator& b);

struct GupBoundReport {
  double lhs = 0.0;
  /// ½|1 + (l²/2)<P²>|.
  double paper_rhs = 0.0;
  /// |<[X,P]>| / 2.
  double robertson_rhs = 0.0;
  bool satisfies_paper_bound = false;
};

GupBoundReport gup_bound_report(const LatticeState& state, DiscretenessScale scale,
                                Boundary boundary = Boundary::kPeriodic);

/// Minimum over ΔP > 0 of 1/(2ΔP) + (l²/4)ΔP.
struct BoundMinimum {
  /// l/√2.
  double closed_form = 0.0;
  /// √2/l.
  double argmin_delta_p = 0.0;
  /// Golden-section search of the same function.
  double numeric = 0.0;
  double numeric_argmin = 0.0;
};

BoundMinimum bound_minimum(DiscretenessScale scale);

/// Search box for the cos-modulated Gaussian family.
struct GaussianFamily {
  int sites = 512;
  double width_min = 0.25;
  double width_max = 8.0;
  double k0_min = 0.0;
  double k0_max = std::numbers::pi;
  int grid = 32;
  int refinements = 12;
};

struct MinimizationReport {
  BoundMinimum bound;
  /// Smallest ΔX among family states that satisfy the modified bound.
  double realized_min_dx = 0.0;
  double realized_width = 0.0;
  double realized_k0 = 0.0;
  double realized_dp = 0.0;
  /// ΔXΔP - |<[X,P]>|/2 at the optimum.
  double robertson_gap = 0.0;
  /// realized_min_dx / (l/√2) - 1.
  double relative_gap = 0.0;
};

/// Grid scan with local refinement. Throws FamilyTooNarrow when the optimum
/// sits on the width range boundary or no state satisfies the bound, and
/// DomainTooSmall when the widest envelope would feel the lattice ends.
MinimizationReport minimize_delta_x(DiscretenessScale scale, const GaussianFamily& family = {});

/// Largest |[X,P] - (i/2)(shift+ + shift-)| entry over rows away from the
/// lattice ends (and the periodic seam).
double commutator_algebra_deviation(int sites, DiscretenessScale scale,
                                    Boundary boundary = Boundary::kPeriodic);

/// Largest |A - A^†| entry.
double self_adjoint_defect(const LatticeOperator& op);

}  // namespace ontoca

#endif  // ONTOCA_GUP_HPP_
