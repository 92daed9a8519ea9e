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

#include "ontoca/hamiltonian.hpp"

#include "ontoca/errors.hpp"

namespace ontoca {

HamiltonianModel::HamiltonianModel(IntMatrix s, IntMatrix a)
    : s_(std::move(s)), a_(std::move(a)) {
  const Eigen::Index n = s_.rows();
  h_.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) h_(r, c) = GaussianInt(s_(r, c), a_(r, c));
  }
  h_complex_ = to_complex(h_);
}

HamiltonianModel build_hamiltonian(IntMatrix S, IntMatrix A) {
  if (S.rows() != S.cols() || A.rows() != A.cols()) {
    throw DimensionMismatch("build_hamiltonian: S and A must be square");
  }
  if (S.rows() != A.rows()) {
    throw DimensionMismatch("build_hamiltonian: S and A have different dimensions");
  }
  if (S.rows() == 0) throw DimensionMismatch("build_hamiltonian: empty model");
  const Eigen::Index n = S.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (S(r, c) != S(c, r)) {
        throw SymmetryViolation("S is not symmetric", static_cast<int>(r), static_cast<int>(c));
      }
      if (A(r, c) != -A(c, r)) {
        throw SymmetryViolation("A is not antisymmetric", static_cast<int>(r),
                                static_cast<int>(c));
      }
    }
  }
  return HamiltonianModel(std::move(S), std::move(A));
}

HamiltonianModel build_hamiltonian(const Eigen::MatrixXi& S, const Eigen::MatrixXi& A) {
  return build_hamiltonian(IntMatrix(S.cast<BigInt>()), IntMatrix(A.cast<BigInt>()));
}

HamiltonianModel hamiltonian_from_matrix(const GaussianMatrix& H) {
  IntMatrix s(H.rows(), H.cols());
  IntMatrix a(H.rows(), H.cols());
  for (Eigen::Index r = 0; r < H.rows(); ++r) {
    for (Eigen::Index c = 0; c < H.cols(); ++c) {
      s(r, c) = H(r, c).real();
      a(r, c) = H(r, c).imag();
    }
  }
  return build_hamiltonian(std::move(s), std::move(a));
}

HamiltonianModel zero_hamiltonian(int dim) {
  return build_hamiltonian(IntMatrix(IntMatrix::Zero(dim, dim)),
                           IntMatrix(IntMatrix::Zero(dim, dim)));
}

}  // namespace ontoca
