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

#ifndef ONTOCA_GAUSSIAN_HPP_
#define ONTOCA_GAUSSIAN_HPP_

#include <complex>
#include <concepts>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace ontoca {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer. Expression templates are off so values
/// behave like plain value types inside Eigen expressions.
using BigInt = mp::number<mp::gmp_int, mp::et_off>;
/// Arbitrary-precision rational, always kept in lowest terms.
using BigRational = mp::number<mp::gmp_rational, mp::et_off>;

/// Complex number a + ib over an exact ring T.
///
/// With T = BigInt this is a Gaussian integer; with T = BigRational a
/// Gaussian rational. No operation ever rounds.
template <class T>
class Gaussian {
 public:
  using value_type = T;

  Gaussian() : re_(0), im_(0) {}
  template <std::integral I>
  Gaussian(I re) : re_(re), im_(0) {}  // NOLINT: implicit, Eigen builds Scalar(0)/Scalar(1)
  Gaussian(T re) : re_(std::move(re)), im_(0) {}  // NOLINT
  Gaussian(T re, T im) : re_(std::move(re)), im_(std::move(im)) {}

  /// The imaginary unit.
  static Gaussian i() { return Gaussian(T(0), T(1)); }

  const T& real() const { return re_; }
  const T& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }

  /// a·conj(a) = re² + im².
  T norm() const { return re_ * re_ + im_ * im_; }

  Gaussian conj() const { return Gaussian(re_, -im_); }

  /// Multiplication by i: (re, im) -> (-im, re).
  Gaussian times_i() const { return Gaussian(-im_, re_); }
  /// Multiplication by -i: (re, im) -> (im, -re).
  Gaussian times_minus_i() const { return Gaussian(im_, -re_); }

  Gaussian operator-() const { return Gaussian(-re_, -im_); }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  Gaussian& operator/=(const Gaussian& o) { return *this = *this / o; }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return Gaussian(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  /// Exact division; only meaningful when T is a field.
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    const T d = b.norm();
    const Gaussian n = a * b.conj();
    return Gaussian(n.re_ / d, n.im_ / d);
  }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  // ADL hooks used by Eigen for adjoint() / dot().
  friend Gaussian conj(const Gaussian& a) { return a.conj(); }
  friend T real(const Gaussian& a) { return a.re_; }
  friend T imag(const Gaussian& a) { return a.im_; }

  /// Compact form: "0", "3", "-i", "1-i", "1/2+1/2i".
  std::string to_string() const {
    auto str = [](const T& v) { return v.str(); };
    if (im_ == 0) return str(re_);
    std::string imag_part;
    if (im_ == 1) {
      imag_part = "i";
    } else if (im_ == -1) {
      imag_part = "-i";
    } else {
      imag_part = str(im_) + "i";
    }
    if (re_ == 0) return imag_part;
    return str(re_) + (im_ > 0 ? "+" : "") + imag_part;
  }

  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) {
    return os << g.to_string();
  }

 private:
  T re_;
  T im_;
};

using GaussianInt = Gaussian<BigInt>;
using GaussianRational = Gaussian<BigRational>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using GaussianVector = Vector<GaussianInt>;
using GaussianMatrix = Matrix<GaussianInt>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Multiplication by -i that stays exact for Gaussian scalars.
template <class T>
Gaussian<T> minus_i_times(const Gaussian<T>& z) {
  return z.times_minus_i();
}
inline std::complex<double> minus_i_times(const std::complex<double>& z) {
  return {z.imag(), -z.real()};
}

/// The imaginary unit in any supported scalar type.
template <class Scalar>
Scalar imaginary_unit() {
  if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
    return {0.0, 1.0};
  } else {
    return Scalar::i();
  }
}

template <class T>
std::complex<double> to_complex(const Gaussian<T>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

template <class Derived>
ComplexMatrix to_complex(const Eigen::MatrixBase<Derived>& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = to_complex(m(r, c));
  }
  return out;
}

/// Exact widening of Gaussian integers to Gaussian rationals.
inline GaussianRational to_rational(const GaussianInt& z) {
  return GaussianRational(BigRational(z.real()), BigRational(z.imag()));
}

/// Kronecker product A ⊗ B; row index of the result is a·rows(B) + b.
template <class Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <class Scalar>
Vector<Scalar> kron(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  Vector<Scalar> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// True iff m equals its conjugate transpose entrywise.
template <class Derived>
bool is_self_adjoint(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = r; c < m.cols(); ++c) {
      using std::conj;
      if (m(r, c) != conj(m(c, r))) return false;
    }
  }
  return true;
}

}  // namespace ontoca

namespace Eigen {

template <class T>
struct NumTraits<ontoca::Gaussian<T>> : GenericNumTraits<ontoca::Gaussian<T>> {
  using Real = T;
  using NonInteger = ontoca::Gaussian<T>;
  using Literal = ontoca::Gaussian<T>;
  using Nested = ontoca::Gaussian<T>;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  // Exact values; only consulted when a matrix is streamed.
  static constexpr int digits10() { return 0; }
  static constexpr int max_digits10() { return 0; }
};

}  // namespace Eigen

#endif  // ONTOCA_GAUSSIAN_HPP_
