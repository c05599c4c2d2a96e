#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paraholo {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad syntax, bad schema, asymmetric data).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A quantity that has to be inverted sits on the null cone of the ring.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ZeroDivisor : public DegenerateError {
 public:
  explicit ZeroDivisor(double modulus)
      : DegenerateError("zero divisor: |re^2 - im^2| = " + std::to_string(modulus)),
        modulus_(modulus) {}
  double modulus() const noexcept { return modulus_; }

 private:
  double modulus_;
};

enum class Projection { plus, minus };

inline const char* to_string(Projection p) { return p == Projection::plus ? "plus" : "minus"; }

class SingularProjection : public DegenerateError {
 public:
  explicit SingularProjection(Projection which)
      : DegenerateError(std::string("singular null-basis projection (") + to_string(which) + ")"),
        which_(which) {}
  Projection which() const noexcept { return which_; }

 private:
  Projection which_;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : InputError("syntax error at position " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class IndexOutOfRange : public InputError {
 public:
  explicit IndexOutOfRange(int index)
      : InputError("variable index out of range: " + std::to_string(index)), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class AsymmetricInput : public InputError {
 public:
  AsymmetricInput(int row, int col, double difference)
      : InputError("metric entries (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                   ") and its mirror differ by " + std::to_string(difference)),
        row_(row),
        col_(col),
        difference_(difference) {}
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  double difference() const noexcept { return difference_; }

 private:
  int row_, col_;
  double difference_;
};

class NotNorden : public InputError {
 public:
  NotNorden(std::size_t point, double violation)
      : InputError("metric is not para-Norden at sample " + std::to_string(point) +
                   " (violation " + std::to_string(violation) + ")"),
        point_(point),
        violation_(violation) {}
  std::size_t point() const noexcept { return point_; }
  double violation() const noexcept { return violation_; }

 private:
  std::size_t point_;
  double violation_;
};

class DegeneratePlane : public DegenerateError {
 public:
  DegeneratePlane() : DegenerateError("degenerate 2-plane: G(Z1,Z1)G(Z2,Z2) - G(Z1,Z2)^2 is a zero divisor") {}
};

class NonRealScalar : public Error {
 public:
  explicit NonRealScalar(double imag)
      : Error("scalar curvature has imaginary part " + std::to_string(imag)), imag_(imag) {}
  double imag() const noexcept { return imag_; }

 private:
  double imag_;
};

class SingularRealMetric : public DegenerateError {
 public:
  SingularRealMetric() : DegenerateError("realized metric is singular at the evaluation point") {}
};

class NotAntisymmetric : public InputError {
 public:
  NotAntisymmetric(int a, int b, int c)
      : InputError("structure constants not antisymmetric at C^" + std::to_string(a + 1) + "_" +
                   std::to_string(b + 1) + std::to_string(c + 1)),
        a_(a),
        b_(b),
        c_(c) {}
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int c() const noexcept { return c_; }

 private:
  int a_, b_, c_;
};

class JacobiViolation : public InputError {
 public:
  explicit JacobiViolation(double residual)
      : InputError("structure constants violate the Jacobi identity (residual " +
                   std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotSemisimple : public DegenerateError {
 public:
  NotSemisimple() : DegenerateError("Lie algebra is not semisimple (Killing form degenerate)") {}
};

class NoSignWorks : public InputError {
 public:
  NoSignWorks() : InputError("no sign of the series frame satisfies the Maurer-Cartan check") {}
};

}  // namespace paraholo
