#pragma once

// Para-complex Riemannian metrics in adapted coordinates and their real realizations.
//
// Only the unbarred block G_ab is stored. The barred block is conj_expr(G_ab), which as a
// function of the slots is the same metric seen from the conjugate variables; mixed blocks
// vanish. Both blocks ("sheets") are kept as expressions so that derivatives in any slot
// direction can be evaluated with dual numbers.

#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "paraholo/errors.hpp"
#include "paraholo/expression.hpp"
#include "paraholo/paracomplex.hpp"

namespace paraholo {

using ExprMatrix = Matrix<Expression>;

/// {(0.3, 0.1), (0.7, -0.2)}^n, first 16 points in lexicographic order.
inline std::vector<EvalPoint> default_sample_grid(int n) {
  const ParaComplex choices[2] = {{0.3, 0.1}, {0.7, -0.2}};
  std::vector<EvalPoint> out;
  const long total = 1L << std::min(n, 30);
  for (long k = 0; k < total && out.size() < 16; ++k) {
    std::vector<ParaComplex> c(n);
    for (int a = 0; a < n; ++a) c[a] = choices[(k >> (n - 1 - a)) & 1];
    out.emplace_back(std::move(c));
  }
  return out;
}

/// Slot vector of a point lifted to scalar type S.
template <class S>
std::vector<S> lift_slots(const EvalPoint& p) {
  std::vector<S> out;
  for (const auto& v : p.slots()) out.push_back(S(v));
  return out;
}

template <class S>
Matrix<S> evaluate_matrix(const ExprMatrix& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  Matrix<S> out(m.rows(), m.cols());
  std::span<const S> s(slots);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = evaluate_slots<S>(m(i, j), s, eps);
  return out;
}

inline PCMatrix evaluate_matrix(const ExprMatrix& m, const EvalPoint& p, double eps = default_inverse_epsilon) {
  return evaluate_matrix<ParaComplex>(m, p.slots(), eps);
}

inline ExprMatrix diff_matrix(const ExprMatrix& m, int index, bool barred) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = diff_expr(m(i, j), index, barred);
  return out;
}

inline ExprMatrix conj_matrix(const ExprMatrix& m) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = conj_expr(m(i, j));
  return out;
}

class ParaMetric {
 public:
  /// G is taken as given; only its upper triangle is read.
  ParaMetric(int n, const ExprMatrix& G) {
    auto d = std::make_shared<Data>();
    d->n = n;
    ExprMatrix sym(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) sym(a, b) = sym(b, a) = G(a, b);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (sym(a, b).max_index() > n) throw IndexOutOfRange(sym(a, b).max_index());
    d->sheets[0] = sym;
    d->sheets[1] = conj_matrix(sym);
    for (int s = 0; s < 2; ++s)
      for (int k = 0; k < 2 * n; ++k) d->dsheets[s].push_back(diff_matrix(d->sheets[s], k % n + 1, k >= n));
    data_ = std::move(d);
  }

  int n() const noexcept { return data_->n; }
  const ExprMatrix& G() const noexcept { return data_->sheets[0]; }
  const ExprMatrix& sheet(bool barred) const noexcept { return data_->sheets[barred]; }
  /// Derivative of a sheet along slot k (k < n: z^{k+1}, else zb^{k-n+1}).
  const ExprMatrix& dsheet(bool barred, int k) const { return data_->dsheets[barred][k]; }

  template <class S>
  Matrix<S> sheet_at(bool barred, const std::vector<S>& slots, double eps = default_inverse_epsilon) const {
    return evaluate_matrix<S>(sheet(barred), slots, eps);
  }
  template <class S>
  Matrix<S> dsheet_at(bool barred, int k, const std::vector<S>& slots, double eps = default_inverse_epsilon) const {
    return evaluate_matrix<S>(dsheet(barred, k), slots, eps);
  }

  PCMatrix at(const EvalPoint& p, double eps = default_inverse_epsilon) const { return evaluate_matrix(G(), p, eps); }

  /// Full 2n x 2n block matrix (G_ab, 0; 0, G_{a-bar b-bar}) at p.
  PCMatrix full_at(const EvalPoint& p, double eps = default_inverse_epsilon) const {
    return block_diagonal(at(p, eps), evaluate_matrix(sheet(true), p, eps));
  }

  ParaMetric twin() const {
    const int n = this->n();
    ExprMatrix t(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t(a, b) = Expression::unit() * G()(a, b);
    return ParaMetric(n, t);
  }

  template <class S>
  static Matrix<S> block_diagonal(const Matrix<S>& u, const Matrix<S>& l) {
    const std::size_t n = u.rows();
    Matrix<S> out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) = u(i, j);
        out(n + i, n + j) = l(i, j);
      }
    return out;
  }

 private:
  struct Data {
    int n = 0;
    ExprMatrix sheets[2];
    std::vector<ExprMatrix> dsheets[2];
  };
  std::shared_ptr<const Data> data_;
};

/// Builds a metric from a possibly partial n x n table. Missing entries are taken from
/// the mirror position (or zero). Where both (a,b) and (b,a) are given they must agree
/// at the probe points.
inline ParaMetric build_metric(int n, const std::vector<std::vector<std::optional<Expression>>>& entries,
                               std::span<const EvalPoint> probes = {}, double tol = 1e-9) {
  if (n < 1) throw InputError("metric dimension must be positive");
  if (int(entries.size()) != n) throw InputError("metric must have " + std::to_string(n) + " rows");
  for (const auto& row : entries)
    if (int(row.size()) != n) throw InputError("metric must have " + std::to_string(n) + " columns");
  std::vector<EvalPoint> grid;
  if (probes.empty()) {
    grid = default_sample_grid(n);
    probes = grid;
  }
  ExprMatrix G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const auto& up = entries[a][b];
      const auto& lo = entries[b][a];
      if (up && lo && !(*up == *lo)) {
        for (const auto& p : probes) {
          ParaComplex u, l;
          try {
            u = eval_expr(*up, p);
            l = eval_expr(*lo, p);
          } catch (const ZeroDivisor&) {
            continue;
          }
          double d = abs_max(u - l);
          if (d > tol * (1.0 + abs_max(u))) throw AsymmetricInput(a, b, d);
        }
      }
      G(a, b) = up ? *up : lo ? *lo : Expression();
    }
  return ParaMetric(n, G);
}

inline ParaMetric build_metric(int n, const ExprMatrix& entries) {
  std::vector<std::vector<std::optional<Expression>>> e(n, std::vector<std::optional<Expression>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) e[a][b] = entries(a, b);
  return build_metric(n, e);
}

/// Throws SingularProjection at the first sample where G cannot be inverted.
inline void check_nondegenerate(const ParaMetric& m, std::span<const EvalPoint> samples,
                                double eps = default_inverse_epsilon) {
  for (const auto& p : samples) matrix_inverse_pc(m.at(p, eps), eps);
}

inline bool is_paraholomorphic_metric(const ParaMetric& m, std::span<const EvalPoint> samples, double tol,
                                      double eps = default_inverse_epsilon) {
  for (int a = 0; a < m.n(); ++a)
    for (int b = a; b < m.n(); ++b)
      if (!is_paraholomorphic_expr(m.G()(a, b), samples, tol, eps)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Realization.
//
// Real coordinates are ordered (x^1..x^n, y^1..y^n) with z^a = x^a + e y^a. Entries are
// expressions in z, zb that are real-valued at every genuine point.

struct RealizedMetric {
  int n = 0;
  ExprMatrix g;  // 2n x 2n
};

/// x^a = (z^a + zb^a)/2 and y^a = e (z^a - zb^a)/2 as expressions.
inline Expression real_x(int a) { return Expression(0.5) * (z(a) + zb(a)); }
inline Expression real_y(int a) { return Expression(ParaComplex{0.0, 0.5}) * (z(a) - zb(a)); }

inline RealizedMetric realize_metric(const ParaMetric& m) {
  const int n = m.n();
  RealizedMetric r{n, ExprMatrix(2 * n, 2 * n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Expression& E = m.G()(a, b);
      const Expression& Eb = m.sheet(true)(a, b);
      Expression re2 = E + Eb;
      Expression im2 = Expression::unit() * (E - Eb);
      r.g(a, b) = r.g(n + a, n + b) = re2;
      r.g(a, n + b) = r.g(n + a, b) = im2;
    }
  return r;
}

/// Real matrix of the realized metric at p (imaginary parts dropped).
inline Eigen::MatrixXd realized_at(const RealizedMetric& g, const EvalPoint& p, double eps = default_inverse_epsilon) {
  PCMatrix v = evaluate_matrix(g.g, p, eps);
  Eigen::MatrixXd out(v.rows(), v.cols());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) out(i, j) = v(i, j).re;
  return out;
}

/// Matrix of I on real tangent components: I d/dx^a = d/dy^a, I d/dy^a = d/dx^a.
inline Eigen::MatrixXd i_operator(int n) {
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) I(n + a, a) = I(a, n + a) = 1.0;
  return I;
}

inline double norden_violation(const Eigen::MatrixXd& g) {
  const int n = int(g.rows()) / 2;
  Eigen::MatrixXd I = i_operator(n);
  double v1 = (I.transpose() * g * I - g).cwiseAbs().maxCoeff();
  double v2 = (I.transpose() * g - g * I).cwiseAbs().maxCoeff();
  return std::max(v1, v2);
}

/// Largest violation of g(IX,IY) = g(X,Y) and g(IX,Y) = g(X,IY) over basis vectors and samples.
inline double check_norden(const RealizedMetric& g, std::span<const EvalPoint> samples,
                           double eps = default_inverse_epsilon) {
  double v = 0.0;
  for (const auto& p : samples) v = std::max(v, norden_violation(realized_at(g, p, eps)));
  return v;
}

/// Inverse of realize_metric. Throws NotNorden when some probe violates the Norden condition.
inline ParaMetric complexify_metric(const RealizedMetric& g, std::span<const EvalPoint> probes = {},
                                    double tol = 1e-9) {
  const int n = g.n;
  std::vector<EvalPoint> grid;
  if (probes.empty()) {
    grid = default_sample_grid(n);
    probes = grid;
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double v = norden_violation(realized_at(g, probes[i]));
    if (v > tol) throw NotNorden(i, v);
  }
  ExprMatrix G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G(a, b) = Expression(0.5) * (g.g(a, b) + Expression::unit() * g.g(a, n + b));
  return ParaMetric(n, G);
}

}  // namespace paraholo
