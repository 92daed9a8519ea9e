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

// Seeded generators for models, states and sequences. Draws use rng() % span
// directly so that streams are identical across standard libraries.

#ifndef ONTOCA_RANDOM_HPP_
#define ONTOCA_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "ontoca/gaussian.hpp"
#include "ontoca/hamiltonian.hpp"

namespace ontoca {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Uniform real in [0, 1).
double uniform_real(Rng& rng);

/// Components with real and imaginary parts in [-range, range].
GaussianVector random_gaussian_vector(int dim, int range, Rng& rng);

/// S and A entries in [-range, range]; each off-diagonal pair is nonzero with
/// probability `density`.
HamiltonianModel random_model(int dim, int range, Rng& rng, double density = 1.0);

/// Random model with entries in {-1, 0, 1} whose spectrum lies strictly
/// inside (-2, 2) with margin `margin`, by rejection.
HamiltonianModel random_subcritical_model(int dim, Rng& rng, double margin = 1e-3);

/// Rationals p/q with |p| <= range and 1 <= q <= range.
std::vector<BigRational> random_rational_sequence(std::size_t length, int range, Rng& rng);

}  // namespace ontoca

#endif  // ONTOCA_RANDOM_HPP_
