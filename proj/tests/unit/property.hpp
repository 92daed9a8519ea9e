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

// Minimal property harness for the unit tests. Each case gets its own seeded
// generator and the seed shows up in the failure message, so a failing case
// can be replayed on its own.

#ifndef ONTOCA_TESTS_PROPERTY_HPP_
#define ONTOCA_TESTS_PROPERTY_HPP_

#include <gtest/gtest.h>

#include <cstdint>
#include <string>

#include "ontoca/random.hpp"

namespace ontoca::testing {

template <class Body>
void for_all(int cases, std::uint64_t stream, Body&& body) {
  for (int k = 0; k < cases; ++k) {
    const std::uint64_t seed = stream * 1000003ULL + static_cast<std::uint64_t>(k);
    SCOPED_TRACE("property case seed " + std::to_string(seed));
    Rng rng(seed);
    body(rng);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline GaussianInt random_gaussian_int(Rng& rng, int range) {
  return GaussianInt(BigInt(uniform_int(rng, -range, range)), BigInt(uniform_int(rng, -range, range)));
}

inline GaussianVector unit_vector(int dim, int k) {
  GaussianVector v = GaussianVector::Constant(dim, GaussianInt(0));
  v(k) = GaussianInt(1);
  return v;
}

inline GaussianVector gvec(std::initializer_list<GaussianInt> xs) {
  GaussianVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (const auto& x : xs) v(k++) = x;
  return v;
}

}  // namespace ontoca::testing

#endif  // ONTOCA_TESTS_PROPERTY_HPP_
