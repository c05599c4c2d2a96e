#pragma once

// Forward-mode differentiation scalars.
//
// Dual<S> carries a value and one directional derivative over any para-complex scalar S;
// nesting Dual<Dual<S>> yields mixed second derivatives. It is how pointwise derivatives of
// connection coefficients (which involve a numerically inverted metric) are obtained.
//
// HyperDual is a real number with two independent infinitesimals (e1, e2, e1*e2). It is
// used only by the real-coordinate oracle.

#include <cmath>

#include "paraholo/paracomplex.hpp"

namespace paraholo {

template <class S>
struct Dual {
  S v{};
  S d{};

  Dual() = default;
  Dual(S value, S deriv) : v(std::move(value)), d(std::move(deriv)) {}
  explicit Dual(const ParaComplex& c) : v(S(c)), d{} {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
  friend Dual operator*(const Dual& a, double s) { return {a.v * s, a.d * s}; }
  friend Dual operator*(double s, const Dual& a) { return a * s; }
};

template <class S>
Dual<S> invert(const Dual<S>& x, double eps = default_inverse_epsilon) {
  S iv = invert(x.v, eps);
  return {iv, -(x.d * iv * iv)};
}

template <class S>
Dual<S> exp(const Dual<S>& x) {
  S ev = exp(x.v);
  return {ev, ev * x.d};
}

/// Innermost para-complex value of a (possibly nested) scalar.
inline const ParaComplex& value_of(const ParaComplex& z) { return z; }
template <class S>
const ParaComplex& value_of(const Dual<S>& x) {
  return value_of(x.v);
}

/// Seeds a scalar with unit derivative along its outermost Dual layer.
template <class S>
Dual<S> seed(const S& value, const S& direction) {
  return {value, direction};
}

template <class S>
Matrix<S> value_part(const Matrix<Dual<S>>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).v;
  return out;
}

/// (A + eps B)^{-1} = A^{-1} - eps A^{-1} B A^{-1}.
template <class S>
Matrix<Dual<S>> inverse(const Matrix<Dual<S>>& m, double eps = default_inverse_epsilon) {
  const std::size_t n = m.rows();
  Matrix<S> a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, j).v;
      b(i, j) = m(i, j).d;
    }
  Matrix<S> ai = inverse(a, eps);
  Matrix<S> corr = ai * b * ai;
  Matrix<Dual<S>> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Dual<S>(ai(i, j), -corr(i, j));
  return out;
}

struct HyperDual {
  double a = 0.0;   // value
  double b = 0.0;   // d/d(e1)
  double c = 0.0;   // d/d(e2)
  double d = 0.0;   // d^2/d(e1)d(e2)

  constexpr HyperDual() = default;
  constexpr HyperDual(double value) : a(value) {}  // NOLINT(google-explicit-constructor)
  constexpr HyperDual(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  HyperDual& operator+=(const HyperDual& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
  }
  friend HyperDual operator+(HyperDual x, const HyperDual& y) { return x += y; }
  friend HyperDual operator-(HyperDual x, const HyperDual& y) { return x -= y; }
  friend HyperDual operator-(const HyperDual& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a,
            x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
  }
  friend HyperDual operator*(const HyperDual& x, double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
  friend HyperDual operator*(double s, const HyperDual& x) { return x * s; }
  friend HyperDual operator/(const HyperDual& x, const HyperDual& y) {
    const double inv = 1.0 / y.a;
    HyperDual r{inv, -y.b * inv * inv, -y.c * inv * inv, (2.0 * y.b * y.c * inv - y.d) * inv * inv};
    return x * r;
  }
};

inline double primal(const HyperDual& x) noexcept { return x.a; }

inline HyperDual exp(const HyperDual& x) {
  const double ea = std::exp(x.a);
  return {ea, ea * x.b, ea * x.c, ea * (x.d + x.b * x.c)};
}

}  // namespace paraholo
