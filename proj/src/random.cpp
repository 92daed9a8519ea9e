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

#include "ontoca/random.hpp"

#include <cmath>

#include "ontoca/errors.hpp"
#include "ontoca/propagator.hpp"

namespace ontoca {

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

GaussianVector random_gaussian_vector(int dim, int range, Rng& rng) {
  GaussianVector v(dim);
  for (int k = 0; k < dim; ++k) {
    const auto re = uniform_int(rng, -range, range);
    const auto im = uniform_int(rng, -range, range);
    v(k) = GaussianInt(BigInt(re), BigInt(im));
  }
  return v;
}

HamiltonianModel random_model(int dim, int range, Rng& rng, double density) {
  Eigen::MatrixXi s = Eigen::MatrixXi::Zero(dim, dim);
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    s(r, r) = static_cast<int>(uniform_int(rng, -range, range));
    for (int c = r + 1; c < dim; ++c) {
      const bool on = uniform_real(rng) < density;
      const int sv = static_cast<int>(uniform_int(rng, -range, range));
      const int av = static_cast<int>(uniform_int(rng, -range, range));
      if (!on) continue;
      s(r, c) = s(c, r) = sv;
      a(r, c) = av;
      a(c, r) = -av;
    }
  }
  return build_hamiltonian(s, a);
}

HamiltonianModel random_subcritical_model(int dim, Rng& rng, double margin) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double density = 1.0 / std::max(1, dim - 1);
    HamiltonianModel m = random_model(dim, 1, rng, density);
    const SpectralDecomposition spec = phi_operator(m);
    if (spec.eigenvalues.cwiseAbs().maxCoeff() < 2.0 - margin) return m;
  }
  throw Error("random_subcritical_model: rejection sampling did not terminate");
}

std::vector<BigRational> random_rational_sequence(std::size_t length, int range, Rng& rng) {
  std::vector<BigRational> out;
  out.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const auto p = uniform_int(rng, -range, range);
    const auto q = uniform_int(rng, 1, range);
    out.emplace_back(BigInt(p), BigInt(q));
  }
  return out;
}

}  // namespace ontoca
