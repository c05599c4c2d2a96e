#pragma once

// Immutable expression trees over para-holomorphic variables z^a and their conjugates zb^a.
//
// z^a and zb^a are independent symbols for differentiation (Wirtinger convention). At an
// actual point zb^a always equals conj(z^a); internal evaluators also accept independent
// "slot" values so that derivatives in z and zb directions can be seeded separately.

#include <charconv>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraholo/dual.hpp"
#include "paraholo/paracomplex.hpp"

namespace paraholo {

enum class NodeKind : std::uint8_t { constant, variable, add, sub, mul, div, pow, exp, neg };

class Expression {
 public:
  struct Node {
    NodeKind kind = NodeKind::constant;
    ParaComplex value{};  // constant
    int index = 0;        // variable, 1-based
    bool barred = false;  // variable
    int exponent = 0;     // pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expression() : Expression(ParaComplex{}) {}
  Expression(ParaComplex c) : node_(make({NodeKind::constant, c})) {}  // NOLINT
  Expression(double c) : Expression(ParaComplex{c, 0.0}) {}           // NOLINT

  static Expression variable(int index, bool barred = false) {
    Node n;
    n.kind = NodeKind::variable;
    n.index = index;
    n.barred = barred;
    return Expression(make(std::move(n)));
  }
  static Expression unit() { return Expression(ParaComplex{0.0, 1.0}); }

  // Raw constructors: build exactly the requested node, no simplification.
  static Expression raw_binary(NodeKind kind, const Expression& l, const Expression& r) {
    Node n;
    n.kind = kind;
    n.lhs = l.node_;
    n.rhs = r.node_;
    return Expression(make(std::move(n)));
  }
  static Expression raw_unary(NodeKind kind, const Expression& arg) {
    Node n;
    n.kind = kind;
    n.lhs = arg.node_;
    return Expression(make(std::move(n)));
  }
  static Expression raw_pow(const Expression& base, int exponent) {
    Node n;
    n.kind = NodeKind::pow;
    n.exponent = exponent;
    n.lhs = base.node_;
    return Expression(make(std::move(n)));
  }

  NodeKind kind() const noexcept { return node_->kind; }
  const ParaComplex& value() const noexcept { return node_->value; }
  int index() const noexcept { return node_->index; }
  bool barred() const noexcept { return node_->barred; }
  int exponent() const noexcept { return node_->exponent; }
  Expression lhs() const { return Expression(node_->lhs); }
  Expression rhs() const { return Expression(node_->rhs); }

  bool is_constant() const noexcept { return node_->kind == NodeKind::constant; }
  bool is_zero() const noexcept { return is_constant() && node_->value == ParaComplex{}; }
  bool is_one() const noexcept { return is_constant() && node_->value == ParaComplex{1.0, 0.0}; }

  /// Largest variable index appearing in the tree (0 for constants).
  int max_index() const { return max_index(*node_); }

  friend bool operator==(const Expression& a, const Expression& b) { return equal(a.node_.get(), b.node_.get()); }

  const Node* node() const noexcept { return node_.get(); }

 private:
  explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<const Node> make(Node n) { return std::make_shared<const Node>(std::move(n)); }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
      case NodeKind::constant: return a->value == b->value;
      case NodeKind::variable: return a->index == b->index && a->barred == b->barred;
      case NodeKind::pow: return a->exponent == b->exponent && equal(a->lhs.get(), b->lhs.get());
      case NodeKind::exp:
      case NodeKind::neg: return equal(a->lhs.get(), b->lhs.get());
      default: return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
    }
  }
  static int max_index(const Node& n) {
    switch (n.kind) {
      case NodeKind::constant: return 0;
      case NodeKind::variable: return n.index;
      case NodeKind::pow:
      case NodeKind::exp:
      case NodeKind::neg: return max_index(*n.lhs);
      default: return std::max(max_index(*n.lhs), max_index(*n.rhs));
    }
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Simplifying builders: 0/1 identities and constant folding only.

inline Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return a.value() + b.value();
  return Expression::raw_binary(NodeKind::add, a, b);
}

inline Expression operator-(const Expression& a) {
  if (a.is_constant()) return -a.value();
  if (a.kind() == NodeKind::neg) return a.lhs();
  return Expression::raw_unary(NodeKind::neg, a);
}

inline Expression operator-(const Expression& a, const Expression& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_constant() && b.is_constant()) return a.value() - b.value();
  return Expression::raw_binary(NodeKind::sub, a, b);
}

inline Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return a.value() * b.value();
  if (b.is_constant()) return b * a;  // constants first
  if (a.is_constant() && b.kind() == NodeKind::mul && b.lhs().is_constant())
    return Expression(a.value() * b.lhs().value()) * b.rhs();
  return Expression::raw_binary(NodeKind::mul, a, b);
}

inline Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_one()) return a;
  if (a.is_zero()) return Expression();
  if (b.is_constant()) {
    const ParaComplex& v = b.value();
    if (std::abs(modulus(v)) > default_inverse_epsilon) return Expression(invert(v)) * a;
  }
  return Expression::raw_binary(NodeKind::div, a, b);
}

inline Expression& operator+=(Expression& a, const Expression& b) { return a = a + b; }
inline Expression& operator-=(Expression& a, const Expression& b) { return a = a - b; }
inline Expression& operator*=(Expression& a, const Expression& b) { return a = a * b; }

inline ParaComplex pow_int(ParaComplex base, int k, double eps = default_inverse_epsilon) {
  if (k < 0) {
    base = invert(base, eps);
    k = -k;
  }
  ParaComplex out{1.0, 0.0};
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

inline Expression pow(const Expression& base, int k) {
  if (k == 0) return Expression(1.0);
  if (k == 1) return base;
  if (base.is_constant() && (k > 0 || std::abs(modulus(base.value())) > default_inverse_epsilon))
    return pow_int(base.value(), k);
  return Expression::raw_pow(base, k);
}

inline Expression exp(const Expression& arg) {
  if (arg.is_constant()) return exp(arg.value());
  return Expression::raw_unary(NodeKind::exp, arg);
}

inline Expression z(int index) { return Expression::variable(index, false); }
inline Expression zb(int index) { return Expression::variable(index, true); }

// ---------------------------------------------------------------------------

/// Symbolic partial derivative with respect to z^index (or zb^index when barred).
inline Expression diff_expr(const Expression& e, int index, bool barred) {
  switch (e.kind()) {
    case NodeKind::constant: return Expression();
    case NodeKind::variable: return (e.index() == index && e.barred() == barred) ? Expression(1.0) : Expression();
    case NodeKind::add: return diff_expr(e.lhs(), index, barred) + diff_expr(e.rhs(), index, barred);
    case NodeKind::sub: return diff_expr(e.lhs(), index, barred) - diff_expr(e.rhs(), index, barred);
    case NodeKind::neg: return -diff_expr(e.lhs(), index, barred);
    case NodeKind::mul: {
      Expression f = e.lhs(), g = e.rhs();
      return diff_expr(f, index, barred) * g + f * diff_expr(g, index, barred);
    }
    case NodeKind::div: {
      Expression f = e.lhs(), g = e.rhs();
      Expression df = diff_expr(f, index, barred), dg = diff_expr(g, index, barred);
      if (dg.is_zero()) return df / g;
      return (df * g - f * dg) / pow(g, 2);
    }
    case NodeKind::pow: {
      Expression f = e.lhs();
      int k = e.exponent();
      return Expression(double(k)) * pow(f, k - 1) * diff_expr(f, index, barred);
    }
    case NodeKind::exp: return e * diff_expr(e.lhs(), index, barred);
  }
  return Expression();
}

/// Swaps z and zb and conjugates every constant.
inline Expression conj_expr(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::constant: return Expression(conj(e.value()));
    case NodeKind::variable: return Expression::variable(e.index(), !e.barred());
    case NodeKind::pow: return Expression::raw_pow(conj_expr(e.lhs()), e.exponent());
    case NodeKind::exp:
    case NodeKind::neg: return Expression::raw_unary(e.kind(), conj_expr(e.lhs()));
    default: return Expression::raw_binary(e.kind(), conj_expr(e.lhs()), conj_expr(e.rhs()));
  }
}

// ---------------------------------------------------------------------------
// Evaluation.

/// Evaluates e with explicit values for every variable slot: slots[a-1] holds z^a and
/// slots[n+a-1] holds zb^a, n = slots.size() / 2.
template <class S>
S evaluate_slots(const Expression::Node& node, std::span<const S> slots, double eps) {
  const std::size_t n = slots.size() / 2;
  switch (node.kind) {
    case NodeKind::constant: return S(node.value);
    case NodeKind::variable: {
      if (node.index < 1 || std::size_t(node.index) > n) throw IndexOutOfRange(node.index);
      return slots[(node.barred ? n : 0) + std::size_t(node.index - 1)];
    }
    case NodeKind::add: return evaluate_slots(*node.lhs, slots, eps) + evaluate_slots(*node.rhs, slots, eps);
    case NodeKind::sub: return evaluate_slots(*node.lhs, slots, eps) - evaluate_slots(*node.rhs, slots, eps);
    case NodeKind::mul: return evaluate_slots(*node.lhs, slots, eps) * evaluate_slots(*node.rhs, slots, eps);
    case NodeKind::div:
      return evaluate_slots(*node.lhs, slots, eps) * invert(evaluate_slots(*node.rhs, slots, eps), eps);
    case NodeKind::neg: return -evaluate_slots(*node.lhs, slots, eps);
    case NodeKind::exp: return exp(evaluate_slots(*node.lhs, slots, eps));
    case NodeKind::pow: {
      S base = evaluate_slots(*node.lhs, slots, eps);
      int k = node.exponent;
      if (k < 0) {
        base = invert(base, eps);
        k = -k;
      }
      S out(ParaComplex{1.0, 0.0});
      while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
      }
      return out;
    }
  }
  return S(ParaComplex{});
}

template <class S>
S evaluate_slots(const Expression& e, std::span<const S> slots, double eps = default_inverse_epsilon) {
  return evaluate_slots(*e.node(), slots, eps);
}

/// A point of C^n; the conjugate coordinates are always derived, never assigned.
class EvalPoint {
 public:
  EvalPoint() = default;
  explicit EvalPoint(std::vector<ParaComplex> coords) : coords_(std::move(coords)) {}

  std::size_t dimension() const noexcept { return coords_.size(); }
  const std::vector<ParaComplex>& coords() const noexcept { return coords_; }
  const ParaComplex& operator[](std::size_t i) const { return coords_[i]; }

  /// (z^1..z^n, conj z^1..conj z^n)
  std::vector<ParaComplex> slots() const {
    std::vector<ParaComplex> s(coords_);
    for (const auto& c : coords_) s.push_back(conj(c));
    return s;
  }

 private:
  std::vector<ParaComplex> coords_;
};

inline ParaComplex eval_expr(const Expression& e, const EvalPoint& p, double eps = default_inverse_epsilon) {
  auto s = p.slots();
  return evaluate_slots<ParaComplex>(e, std::span<const ParaComplex>(s), eps);
}

/// True iff every d/dzb^a of e vanishes (below tol, componentwise) at every sample.
inline bool is_paraholomorphic_expr(const Expression& e, std::span<const EvalPoint> samples, double tol,
                                    double eps = default_inverse_epsilon) {
  if (samples.empty()) throw std::invalid_argument("is_paraholomorphic_expr: no samples");
  const int n = int(samples.front().dimension());
  for (int a = 1; a <= n; ++a) {
    Expression d = diff_expr(e, a, true);
    if (d.is_zero()) continue;
    for (const auto& p : samples)
      if (abs_max(eval_expr(d, p, eps)) >= tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printing. Output re-parses to an equal tree for every tree the parser produces.

namespace detail {

inline std::string format_real(double x) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    default: return 3;
  }
}

inline std::string to_string(const Expression& e);

inline std::string constant_text(const ParaComplex& c) {
  if (c.im == 0.0 && !std::signbit(c.re)) return format_real(c.re);
  if (c.re == 0.0 && c.im == 1.0) return "e";
  if (c.im == 0.0) return "(-" + format_real(-c.re) + ")";
  std::string out = "(";
  if (c.re != 0.0) out += format_real(c.re) + (c.im < 0 ? " - " : " + ");
  else if (c.im < 0) out += "-";
  out += format_real(std::abs(c.im)) + "*e)";
  return out;
}

inline bool is_atomic(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::variable:
    case NodeKind::exp: return true;
    case NodeKind::constant: return constant_text(e.value()).front() != '(';
    default: return false;
  }
}

inline std::string to_string(const Expression& e) {
  auto wrap = [](const Expression& c, bool parens) { return parens ? "(" + to_string(c) + ")" : to_string(c); };
  switch (e.kind()) {
    case NodeKind::constant: return constant_text(e.value());
    case NodeKind::variable: return (e.barred() ? "zb" : "z") + std::to_string(e.index());
    case NodeKind::exp: return "exp(" + to_string(e.lhs()) + ")";
    case NodeKind::neg: return "-" + wrap(e.lhs(), !is_atomic(e.lhs()));
    case NodeKind::pow: return wrap(e.lhs(), !is_atomic(e.lhs())) + "^" + std::to_string(e.exponent());
    default: {
      const int p = precedence(e.kind());
      const char* op = e.kind() == NodeKind::add ? " + " : e.kind() == NodeKind::sub ? " - " : e.kind() == NodeKind::mul ? "*" : "/";
      Expression l = e.lhs(), r = e.rhs();
      bool lp = precedence(l.kind()) < p;
      bool rp = precedence(r.kind()) <= p;
      // A leading unary minus on the right operand must be parenthesised to stay a single base.
      if (r.kind() == NodeKind::neg) rp = true;
      if (l.kind() == NodeKind::neg && p > 1) lp = true;
      return wrap(l, lp) + op + wrap(r, rp);
    }
  }
}

}  // namespace detail

inline std::string to_string(const Expression& e) { return detail::to_string(e); }

}  // namespace paraholo
