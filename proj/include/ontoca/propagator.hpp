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

#ifndef ONTOCA_PROPAGATOR_HPP_
#define ONTOCA_PROPAGATOR_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include "ontoca/evolution.hpp"
#include "ontoca/gaussian.hpp"
#include "ontoca/hamiltonian.hpp"

namespace ontoca {

/// Fundamental lattice step l > 0.
class DiscretenessScale {
 public:
  explicit DiscretenessScale(double l);
  double value() const { return l_; }

 private:
  double l_;
};

enum class SpectralRegime { kSubcritical, kCritical, kSupercritical };

/// Eigen-decomposition H = V diag(lambda) V^† together with the auxiliary
/// angles phi_k defined by 2 sin(phi_k) = lambda_k (principal branch).
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;
  ComplexVector phi;
  std::vector<SpectralRegime> regimes;
  /// max |H - V Λ V^†| entry.
  double reconstruction_error = 0.0;

  bool has_critical() const;
};

/// Tolerance on ||lambda| - 2| below which an eigenvalue counts as critical.
inline constexpr double kCriticalTolerance = 1e-12;
/// Accepted reconstruction error, relative to max(1, max |H_ij|).
inline constexpr double kSpectralTolerance = 1e-10;

SpectralDecomposition phi_operator(const ComplexMatrix& H);
SpectralDecomposition phi_operator(const HamiltonianModel& model);

/// Principal-branch omega with 2 sin(omega) = lambda. Real for |lambda| <= 2,
/// real part ±pi/2 and nonzero imaginary part beyond.
std::complex<double> dispersion_omega(double lambda);

/// Floating evaluation of the closed-form solution
///   psi_n = (2 cos phi)^{-1} (e^{-in phi}[e^{i phi} psi_0 + psi_1]
///           + (-1)^n e^{in phi}[e^{-i phi} psi_0 - psi_1]).
/// Throws CriticalSpectrum when some cos(phi_k) vanishes.
ComplexVector closed_form_state(const SpectralDecomposition& spectrum, const ComplexVector& psi0,
                                const ComplexVector& psi1, std::int64_t n);
ComplexVector closed_form_state(const HamiltonianModel& model, const ComplexVector& psi0,
                                const ComplexVector& psi1, std::int64_t n);

/// T(k) with T(0) = 1, T(1) = 0, T(k+1) = T(k-1) - iH T(k). Then
///   psi_n = T(n-m+1) psi_{m+1} + T(n-m) psi_m   for every n >= m.
struct TransferPolynomial {
  int order = 0;
  GaussianMatrix matrix;
};

TransferPolynomial transfer_polynomial(const HamiltonianModel& model, int k);
/// T(0), ..., T(max_order).
std::vector<GaussianMatrix> transfer_polynomials(const HamiltonianModel& model, int max_order);

/// [T(n+1) + T(n)] psi_0, the solution with psi_1 = psi_0.
GaussianVector equal_initial_form(const HamiltonianModel& model, const GaussianVector& psi0,
                                  int n);

/// max_n ||psi_{n+1} - psi_{n-1} + iH psi_n||_inf for the stationary ansatz
/// psi_n = e^{-i omega n} v, n = 0 .. steps + 1.
double stationary_residual(const ComplexMatrix& H, double lambda, const ComplexVector& v,
                           int steps);

/// Iterates the update with H' = l·H and psi_1 = psi_0 and compares it with
/// exp(-i H' n / 2) psi_0 for n = 0 .. n_max. Returns the largest component
/// deviation. Throws CriticalSpectrum if l·H has an eigenvalue of modulus 2.
double continuum_limit_check(const HamiltonianModel& model, const ComplexVector& psi0,
                             int n_max, DiscretenessScale scale);

struct SweepPoint {
  double epsilon = 0.0;
  double deviation = 0.0;
};

/// continuum_limit_check at each epsilon with n_max = round(time / epsilon).
std::vector<SweepPoint> continuum_sweep(const HamiltonianModel& model, const ComplexVector& psi0,
                                        const std::vector<double>& epsilons, double time);

}  // namespace ontoca

#endif  // ONTOCA_PROPAGATOR_HPP_
