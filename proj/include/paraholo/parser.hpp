#pragma once

// Recursive-descent parser for the expression DSL.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'e' | 'z'int | 'zb'int | '(' expr ')' | 'exp' '(' expr ')' | '-' base
//
// The tree is returned exactly as written (no simplification), so printing and re-parsing
// reproduces it.

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "paraholo/errors.hpp"
#include "paraholo/expression.hpp"

namespace paraholo {

namespace detail {

class Parser {
 public:
  Parser(std::string_view src, int n) : src_(src), n_(n) {}

  Expression run() {
    Expression e = expr();
    skip();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }
  bool digit_at(std::size_t p) const {
    return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expression::raw_binary(NodeKind::add, lhs, term());
      else if (accept('-')) lhs = Expression::raw_binary(NodeKind::sub, lhs, term());
      else return lhs;
    }
  }

  Expression term() {
    Expression lhs = factor();
    for (;;) {
      if (accept('*')) lhs = Expression::raw_binary(NodeKind::mul, lhs, factor());
      else if (accept('/')) lhs = Expression::raw_binary(NodeKind::div, lhs, factor());
      else return lhs;
    }
  }

  Expression factor() {
    Expression b = base();
    if (!accept('^')) return b;
    skip();
    std::size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    if (!digit_at(pos_)) throw SyntaxError(pos_, "integer exponent");
    while (digit_at(pos_)) ++pos_;
    const char* first = src_.data() + start + (src_[start] == '+' ? 1 : 0);
    int k = 0;
    auto res = std::from_chars(first, src_.data() + pos_, k);
    if (res.ec != std::errc()) throw SyntaxError(start, "integer exponent");
    return Expression::raw_pow(b, k);
  }

  int index() {
    std::size_t start = pos_;
    if (!digit_at(pos_)) throw SyntaxError(pos_, "variable index");
    while (digit_at(pos_)) ++pos_;
    int a = 0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, a);
    if (res.ec != std::errc()) throw SyntaxError(start, "variable index");
    if (a < 1 || a > n_) throw IndexOutOfRange(a);
    return a;
  }

  Expression number() {
    std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (digit_at(pos_)) ++pos_;
    }
    double v = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v, std::chars_format::fixed);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) throw SyntaxError(start, "number");
    return Expression(ParaComplex{v, 0.0});
  }

  Expression base() {
    skip();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "operand");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return Expression::raw_unary(NodeKind::neg, base());
    }
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && digit_at(pos_ + 1))) return number();
    if (src_.substr(pos_, 3) == "exp") {
      pos_ += 3;
      expect('(');
      Expression e = expr();
      expect(')');
      return Expression::raw_unary(NodeKind::exp, e);
    }
    if (c == 'e') {
      ++pos_;
      return Expression(ParaComplex{0.0, 1.0});
    }
    if (src_.substr(pos_, 2) == "zb") {
      pos_ += 2;
      return Expression::variable(index(), true);
    }
    if (c == 'z') {
      ++pos_;
      return Expression::variable(index(), false);
    }
    throw SyntaxError(pos_, "operand");
  }

  std::string_view src_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses src over variables z1..zn, zb1..zbn.
inline Expression parse_expr(std::string_view src, int n) { return detail::Parser(src, n).run(); }

}  // namespace paraholo
