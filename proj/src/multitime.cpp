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

#include "ontoca/multitime.hpp"

namespace ontoca {

int schmidt_rank(const ComplexVector& state, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || state.size() != static_cast<Eigen::Index>(d1) * d2) {
    throw DimensionMismatch("schmidt_rank: state length is not d1·d2");
  }
  ComplexMatrix coeff(d1, d2);
  for (int a = 0; a < d1; ++a) {
    for (int b = 0; b < d2; ++b) coeff(a, b) = state(static_cast<Eigen::Index>(a) * d2 + b);
  }
  const Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = 1e-10 * sv(0);
  return static_cast<int>((sv.array() > cut).count());
}

SyncStencil first_order_stencil(LatticePoint center) {
  if (sublattice(center) != Sublattice::kOdd) {
    throw GeometryMismatch("first_order_stencil: center must lie on the odd sublattice");
  }
  const auto [n1, n2] = center;
  return {center,
          {LatticePoint{n1 + 1, n2}, LatticePoint{n1 - 1, n2}, LatticePoint{n1, n2 + 1},
           LatticePoint{n1, n2 - 1}},
          LatticePoint{n1 + 1, n2 + 1}};
}

}  // namespace ontoca
