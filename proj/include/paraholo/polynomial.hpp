#pragma once

// Sparse polynomials in z^1..z^m with para-complex coefficients.

#include <map>
#include <vector>

#include "paraholo/expression.hpp"
#include "paraholo/paracomplex.hpp"

namespace paraholo {

class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int vars) : vars_(vars) {}

  static Polynomial constant(int vars, ParaComplex c) {
    Polynomial p(vars);
    p.add_term(Exponents(vars, 0), c);
    return p;
  }
  /// z^(index+1)
  static Polynomial variable(int vars, int index) {
    Polynomial p(vars);
    Exponents e(vars, 0);
    e[index] = 1;
    p.add_term(e, {1.0, 0.0});
    return p;
  }

  int vars() const noexcept { return vars_; }
  const std::map<Exponents, ParaComplex>& terms() const noexcept { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, ParaComplex c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second == ParaComplex{}) terms_.erase(it);
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.vars_, b.vars_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(out.vars_, 0);
        for (int i = 0; i < out.vars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, ParaComplex s) {
    Polynomial out(a.vars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * s);
    return out;
  }

  Polynomial derivative(int index) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponents f = e;
      --f[index];
      out.add_term(f, c * double(e[index]));
    }
    return out;
  }

  /// Drops coefficients whose components are all below threshold.
  Polynomial chopped(double threshold) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_)
      if (abs_max(c) >= threshold) out.terms_.emplace(e, c);
    return out;
  }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  template <class S>
  S evaluate(const std::vector<S>& z) const {
    S acc{};
    for (const auto& [e, c] : terms_) {
      S t{c};
      for (int i = 0; i < vars_; ++i)
        for (int k = 0; k < e[i]; ++k) t = t * z[i];
      acc += t;
    }
    return acc;
  }

  Expression to_expression() const {
    Expression out(0.0);
    for (const auto& [e, c] : terms_) {
      Expression t{c};
      for (int i = 0; i < vars_; ++i)
        if (e[i] > 0) t = t * pow(z(i + 1), e[i]);
      out = out + t;
    }
    return out;
  }

 private:
  int vars_ = 0;
  std::map<Exponents, ParaComplex> terms_;
};

using PolyMatrix = Matrix<Polynomial>;

}  // namespace paraholo
