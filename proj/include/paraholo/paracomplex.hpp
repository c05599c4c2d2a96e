#pragma once

// Para-complex (split-complex) numbers x + e*y with e^2 = 1, and dense matrices over them.
//
// The ring is not a field: every z with re^2 == im^2 is a zero divisor. Inversion of
// scalars and matrices therefore goes through the null-basis isomorphism
//   C ~ R (+) R,  z -> (re + im, re - im),
// under which multiplication is componentwise.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paraholo/errors.hpp"

namespace paraholo {

inline constexpr double default_inverse_epsilon = 1e-12;

inline double primal(double x) noexcept { return x; }

template <class T>
struct BasicParaComplex {
  T re{};
  T im{};

  constexpr BasicParaComplex() = default;
  constexpr BasicParaComplex(T re_, T im_) : re(std::move(re_)), im(std::move(im_)) {}
  // Lift a double-valued number into a number over an extended scalar type.
  template <class U>
    requires(!std::is_same_v<U, T>)
  constexpr explicit BasicParaComplex(const BasicParaComplex<U>& other) : re(T(other.re)), im(T(other.im)) {}

  static constexpr BasicParaComplex unit() { return {T(0.0), T(1.0)}; }

  BasicParaComplex& operator+=(const BasicParaComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BasicParaComplex& operator-=(const BasicParaComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BasicParaComplex& operator*=(const BasicParaComplex& o) { return *this = *this * o; }

  friend BasicParaComplex operator+(BasicParaComplex a, const BasicParaComplex& b) { return a += b; }
  friend BasicParaComplex operator-(BasicParaComplex a, const BasicParaComplex& b) { return a -= b; }
  friend BasicParaComplex operator-(const BasicParaComplex& a) { return {-a.re, -a.im}; }
  friend BasicParaComplex operator*(const BasicParaComplex& a, const BasicParaComplex& b) {
    return {a.re * b.re + a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BasicParaComplex operator*(const BasicParaComplex& a, double s) { return {a.re * s, a.im * s}; }
  friend BasicParaComplex operator*(double s, const BasicParaComplex& a) { return a * s; }

  friend bool operator==(const BasicParaComplex&, const BasicParaComplex&) = default;
};

using ParaComplex = BasicParaComplex<double>;

template <class T>
constexpr BasicParaComplex<T> conj(const BasicParaComplex<T>& z) {
  return {z.re, -z.im};
}

/// re^2 - im^2; multiplicative.
template <class T>
constexpr T modulus(const BasicParaComplex<T>& z) {
  return z.re * z.re - z.im * z.im;
}

/// Null-basis coordinates (re + im, re - im).
template <class T>
constexpr std::pair<T, T> split(const BasicParaComplex<T>& z) {
  return {z.re + z.im, z.re - z.im};
}

template <class T>
constexpr BasicParaComplex<T> unsplit(const T& plus, const T& minus) {
  return {(plus + minus) * 0.5, (plus - minus) * 0.5};
}

template <class T>
BasicParaComplex<T> invert(const BasicParaComplex<T>& z, double eps = default_inverse_epsilon) {
  T m = modulus(z);
  double mv = primal(m);
  if (!(std::abs(mv) > eps)) throw ZeroDivisor(std::abs(mv));
  return {z.re / m, -z.im / m};
}

template <class T>
BasicParaComplex<T> exp(const BasicParaComplex<T>& z) {
  using std::exp;
  auto [p, q] = split(z);
  return unsplit(T(exp(p)), T(exp(q)));
}

inline double abs_max(const ParaComplex& z) { return std::max(std::abs(z.re), std::abs(z.im)); }

/// Dense row-major matrix over an arbitrary scalar ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero = T{}) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const noexcept { return data_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_, T{});
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using PCMatrix = Matrix<ParaComplex>;

inline PCMatrix pc_identity(std::size_t n) { return PCMatrix::identity(n, ParaComplex{1.0, 0.0}); }

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

/// Real projections (re + im, re - im) of a para-complex matrix.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split(const PCMatrix& m) {
  Eigen::MatrixXd plus(m.rows(), m.cols()), minus(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      plus(i, j) = m(i, j).re + m(i, j).im;
      minus(i, j) = m(i, j).re - m(i, j).im;
    }
  return {plus, minus};
}

inline PCMatrix unsplit(const Eigen::MatrixXd& plus, const Eigen::MatrixXd& minus) {
  PCMatrix out(plus.rows(), plus.cols());
  for (Eigen::Index i = 0; i < plus.rows(); ++i)
    for (Eigen::Index j = 0; j < plus.cols(); ++j)
      out(i, j) = unsplit(plus(i, j), minus(i, j));
  return out;
}

/// Inverts m into out; false when |det m| <= eps.
inline bool invert_real(const Eigen::MatrixXd& m, double eps, Eigen::MatrixXd& out) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(std::abs(lu.determinant()) > eps)) return false;
  out = lu.inverse();
  return true;
}

/// M^{-1} computed on both null-basis projections. Throws SingularProjection naming the
/// projection whose determinant does not exceed eps in absolute value.
inline PCMatrix matrix_inverse_pc(const PCMatrix& m, double eps = default_inverse_epsilon) {
  auto [plus, minus] = split(m);
  Eigen::MatrixXd plus_inv, minus_inv;
  if (!invert_real(plus, eps, plus_inv)) throw SingularProjection(Projection::plus);
  if (!invert_real(minus, eps, minus_inv)) throw SingularProjection(Projection::minus);
  return unsplit(plus_inv, minus_inv);
}

inline Matrix<double> inverse(const Matrix<double>& m, double eps = default_inverse_epsilon) {
  Eigen::MatrixXd out;
  if (!invert_real(to_eigen(m), eps, out)) throw SingularProjection(Projection::plus);
  return from_eigen(out);
}

inline PCMatrix inverse(const PCMatrix& m, double eps = default_inverse_epsilon) {
  return matrix_inverse_pc(m, eps);
}

}  // namespace paraholo
