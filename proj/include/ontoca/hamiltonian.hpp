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

#ifndef ONTOCA_HAMILTONIAN_HPP_
#define ONTOCA_HAMILTONIAN_HPP_

#include "ontoca/gaussian.hpp"

namespace ontoca {

using IntMatrix = Matrix<BigInt>;

/// Integer model H = S + iA with S symmetric and A antisymmetric.
///
/// Instances are only produced by build_hamiltonian(), so every live object
/// satisfies the symmetry invariants and H is self-adjoint.
class HamiltonianModel {
 public:
  int dim() const { return static_cast<int>(s_.rows()); }
  const IntMatrix& S() const { return s_; }
  const IntMatrix& A() const { return a_; }
  /// Exact H = S + iA.
  const GaussianMatrix& H() const { return h_; }
  /// H in double precision, for the spectral routines.
  const ComplexMatrix& H_complex() const { return h_complex_; }

  friend HamiltonianModel build_hamiltonian(IntMatrix S, IntMatrix A);

 private:
  HamiltonianModel(IntMatrix s, IntMatrix a);

  IntMatrix s_;
  IntMatrix a_;
  GaussianMatrix h_;
  ComplexMatrix h_complex_;
};

/// Validates S and A and assembles the model.
/// Throws DimensionMismatch for non-square or unequal shapes and
/// SymmetryViolation (first offending pair in row-major order) otherwise.
HamiltonianModel build_hamiltonian(IntMatrix S, IntMatrix A);

/// Convenience overload from small literal matrices.
HamiltonianModel build_hamiltonian(const Eigen::MatrixXi& S, const Eigen::MatrixXi& A);

/// Splits a self-adjoint Gaussian-integer matrix into S + iA.
HamiltonianModel hamiltonian_from_matrix(const GaussianMatrix& H);

/// Same-dimension zero model.
HamiltonianModel zero_hamiltonian(int dim);

}  // namespace ontoca

#endif  // ONTOCA_HAMILTONIAN_HPP_
