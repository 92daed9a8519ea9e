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

#include "ontoca/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ontoca/errors.hpp"

namespace ontoca {

DiscretenessScale::DiscretenessScale(double l) : l_(l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw Error("DiscretenessScale: l must be positive");
}

bool SpectralDecomposition::has_critical() const {
  return std::any_of(regimes.begin(), regimes.end(),
                     [](SpectralRegime r) { return r == SpectralRegime::kCritical; });
}

std::complex<double> dispersion_omega(double lambda) {
  const double half = lambda / 2.0;
  if (std::abs(half) <= 1.0) return {std::asin(half), 0.0};
  return std::asin(std::complex<double>(half, 0.0));
}

SpectralDecomposition phi_operator(const ComplexMatrix& H) {
  if (H.rows() != H.cols()) throw DimensionMismatch("phi_operator: H must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H);
  if (solver.info() != Eigen::Success) throw Error("phi_operator: eigen-decomposition failed");

  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.phi.resize(out.eigenvalues.size());
  out.regimes.resize(static_cast<std::size_t>(out.eigenvalues.size()));
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
    const double lambda = out.eigenvalues(k);
    out.phi(k) = dispersion_omega(lambda);
    const double gap = std::abs(lambda) - 2.0;
    auto& regime = out.regimes[static_cast<std::size_t>(k)];
    if (std::abs(gap) <= kCriticalTolerance) {
      regime = SpectralRegime::kCritical;
    } else {
      regime = gap < 0 ? SpectralRegime::kSubcritical : SpectralRegime::kSupercritical;
    }
  }
  const ComplexMatrix rebuilt = out.eigenvectors *
                                out.eigenvalues.cast<std::complex<double>>().asDiagonal() *
                                out.eigenvectors.adjoint();
  out.reconstruction_error = H.size() == 0 ? 0.0 : (H - rebuilt).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, H.size() == 0 ? 0.0 : H.cwiseAbs().maxCoeff());
  if (out.reconstruction_error > kSpectralTolerance * scale) {
    throw Error("phi_operator: spectral reconstruction outside tolerance");
  }
  return out;
}

SpectralDecomposition phi_operator(const HamiltonianModel& model) {
  return phi_operator(model.H_complex());
}

ComplexVector closed_form_state(const SpectralDecomposition& spectrum, const ComplexVector& psi0,
                                const ComplexVector& psi1, std::int64_t n) {
  const Eigen::Index dim = spectrum.eigenvalues.size();
  if (psi0.size() != dim || psi1.size() != dim) {
    throw DimensionMismatch("closed_form_state: initial states do not match H");
  }
  if (spectrum.has_critical()) {
    throw CriticalSpectrum("closed_form_state: eigenvalue of modulus 2, use transfer_polynomial");
  }
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const ComplexVector u0 = spectrum.eigenvectors.adjoint() * psi0;
  const ComplexVector u1 = spectrum.eigenvectors.adjoint() * psi1;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double nd = static_cast<double>(n);
  ComplexVector coeff(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const C phi = spectrum.phi(k);
    const C forward = std::exp(-i * nd * phi) * (std::exp(i * phi) * u0(k) + u1(k));
    const C backward = sign * std::exp(i * nd * phi) * (std::exp(-i * phi) * u0(k) - u1(k));
    coeff(k) = (forward + backward) / (2.0 * std::cos(phi));
  }
  return spectrum.eigenvectors * coeff;
}

ComplexVector closed_form_state(const HamiltonianModel& model, const ComplexVector& psi0,
                                const ComplexVector& psi1, std::int64_t n) {
  return closed_form_state(phi_operator(model), psi0, psi1, n);
}

std::vector<GaussianMatrix> transfer_polynomials(const HamiltonianModel& model, int max_order) {
  if (max_order < 0) throw Error("transfer_polynomials: order must be >= 0");
  const int d = model.dim();
  std::vector<GaussianMatrix> T;
  T.reserve(static_cast<std::size_t>(max_order) + 1);
  T.push_back(GaussianMatrix::Identity(d, d));
  if (max_order >= 1) T.push_back(GaussianMatrix::Zero(d, d));
  for (int k = 1; k < max_order; ++k) {
    GaussianMatrix next = model.H() * T[static_cast<std::size_t>(k)];
    for (Eigen::Index e = 0; e < next.size(); ++e) next(e) = minus_i_times(next(e));
    next += T[static_cast<std::size_t>(k) - 1];
    T.push_back(std::move(next));
  }
  return T;
}

TransferPolynomial transfer_polynomial(const HamiltonianModel& model, int k) {
  auto all = transfer_polynomials(model, k);
  return {k, std::move(all.back())};
}

GaussianVector equal_initial_form(const HamiltonianModel& model, const GaussianVector& psi0,
                                  int n) {
  if (psi0.size() != model.dim()) throw DimensionMismatch("equal_initial_form: dimension");
  if (n < 0) throw Error("equal_initial_form: n must be >= 0");
  const auto T = transfer_polynomials(model, n + 1);
  return (T[static_cast<std::size_t>(n) + 1] + T[static_cast<std::size_t>(n)]) * psi0;
}

double stationary_residual(const ComplexMatrix& H, double lambda, const ComplexVector& v,
                           int steps) {
  if (H.rows() != v.size()) throw DimensionMismatch("stationary_residual: dimension");
  const std::complex<double> omega = dispersion_omega(lambda);
  const std::complex<double> i(0.0, 1.0);
  auto psi = [&](int n) -> ComplexVector {
    return std::exp(-i * omega * static_cast<double>(n)) * v;
  };
  double worst = 0.0;
  for (int n = 1; n <= steps; ++n) {
    const ComplexVector r = psi(n + 1) - psi(n - 1) + i * (H * psi(n));
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

double continuum_limit_check(const HamiltonianModel& model, const ComplexVector& psi0,
                             int n_max, DiscretenessScale scale) {
  if (psi0.size() != model.dim()) throw DimensionMismatch("continuum_limit_check: dimension");
  const ComplexMatrix h_scaled = scale.value() * model.H_complex();
  const SpectralDecomposition spectrum = phi_operator(h_scaled);
  if (spectrum.has_critical()) {
    throw CriticalSpectrum("continuum_limit_check: scaled model has a critical eigenvalue");
  }
  using C = std::complex<double>;
  const ComplexVector u0 = spectrum.eigenvectors.adjoint() * psi0;
  auto reference = [&](int n) -> ComplexVector {
    ComplexVector phase(u0.size());
    for (Eigen::Index k = 0; k < u0.size(); ++k) {
      phase(k) = std::exp(C(0.0, -0.5 * spectrum.eigenvalues(k) * n)) * u0(k);
    }
    return spectrum.eigenvectors * phase;
  };

  PairState<C> pair{psi0, psi0, 1};
  double worst = (pair.prev - reference(0)).cwiseAbs().maxCoeff();
  for (int n = 1; n <= n_max; ++n) {
    worst = std::max(worst, (pair.curr - reference(n)).cwiseAbs().maxCoeff());
    pair = step(pair, h_scaled, Direction::kForward);
  }
  return worst;
}

std::vector<SweepPoint> continuum_sweep(const HamiltonianModel& model, const ComplexVector& psi0,
                                        const std::vector<double>& epsilons, double time) {
  std::vector<SweepPoint> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const int n_max = static_cast<int>(std::lround(time / eps));
    out.push_back({eps, continuum_limit_check(model, psi0, n_max, DiscretenessScale(eps))});
  }
  return out;
}

}  // namespace ontoca
