#pragma once

// Para-complex Lie groups: structure constants, Maurer-Cartan frames, the invariant metric
// g_ab = C_pq l^p_a l^q_b and its curvature identities.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "paraholo/connection.hpp"
#include "paraholo/curvature.hpp"
#include "paraholo/dual.hpp"
#include "paraholo/errors.hpp"
#include "paraholo/expression.hpp"
#include "paraholo/metric.hpp"
#include "paraholo/polynomial.hpp"
#include "paraholo/tensor.hpp"

namespace paraholo {

struct StructureEntry {
  int upper = 0;  // 0-based
  int b = 0, c = 0;
  ParaComplex value;
};

struct LieAlgebraData {
  int m = 0;
  std::vector<ParaComplex> C;  // C^a_bc at (a*m + b)*m + c
  PCMatrix killing;
  bool semisimple = false;
  double jacobi = 0.0;

  const ParaComplex& operator()(int a, int b, int c) const { return C[(std::size_t(a) * m + b) * m + c]; }
};

/// Dense table from literal entries; mates are not filled in.
inline std::vector<ParaComplex> structure_table(int m, std::span<const StructureEntry> entries) {
  std::vector<ParaComplex> C(std::size_t(m) * m * m);
  for (const auto& e : entries) {
    for (int i : {e.upper, e.b, e.c})
      if (i < 0 || i >= m) throw IndexOutOfRange(i + 1);
    C[(std::size_t(e.upper) * m + e.b) * m + e.c] = e.value;
  }
  return C;
}

inline PCMatrix killing_form(int m, const std::vector<ParaComplex>& C) {
  auto at = [&](int a, int b, int c) { return C[(std::size_t(a) * m + b) * m + c]; };
  PCMatrix k(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) k(a, b) += at(c, a, d) * at(d, b, c);
  return k;
}

inline LieAlgebraData validate_structure(int m, std::vector<ParaComplex> C, double jacobi_tol = 1e-12) {
  LieAlgebraData L;
  L.m = m;
  L.C = std::move(C);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = b; c < m; ++c)
        if (!(L(a, b, c) == -L(a, c, b))) throw NotAntisymmetric(a, b, c);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int e = 0; e < m; ++e) {
          ParaComplex j;
          for (int d = 0; d < m; ++d) j += L(a, b, d) * L(d, c, e) + L(a, c, d) * L(d, e, b) + L(a, e, d) * L(d, b, c);
          L.jacobi = std::max(L.jacobi, abs_max(j));
        }
  if (L.jacobi > jacobi_tol) throw JacobiViolation(L.jacobi);
  L.killing = killing_form(m, L.C);
  try {
    (void)matrix_inverse_pc(L.killing);
    L.semisimple = true;
  } catch (const SingularProjection&) {
    L.semisimple = false;
  }
  return L;
}

inline LieAlgebraData validate_structure(int m, std::span<const StructureEntry> entries, double jacobi_tol = 1e-12) {
  return validate_structure(m, structure_table(m, entries), jacobi_tol);
}

// ---------------------------------------------------------------------------
// Standard algebras.

/// sl(2): [h,x] = 2x, [h,y] = -2y, [x,y] = h with basis (h, x, y).
inline std::vector<ParaComplex> sl2_table() {
  std::vector<ParaComplex> C(27);
  auto set = [&](int a, int b, int c, double v) {
    C[(a * 3 + b) * 3 + c] = {v, 0.0};
    C[(a * 3 + c) * 3 + b] = {-v, 0.0};
  };
  set(1, 0, 1, 2.0);
  set(2, 0, 2, -2.0);
  set(0, 1, 2, 1.0);
  return C;
}

/// Block sum of two algebras.
inline std::vector<ParaComplex> direct_sum(int m1, const std::vector<ParaComplex>& A, int m2,
                                           const std::vector<ParaComplex>& B) {
  const int m = m1 + m2;
  std::vector<ParaComplex> C(std::size_t(m) * m * m);
  for (int a = 0; a < m1; ++a)
    for (int b = 0; b < m1; ++b)
      for (int c = 0; c < m1; ++c) C[(a * m + b) * m + c] = A[(a * m1 + b) * m1 + c];
  for (int a = 0; a < m2; ++a)
    for (int b = 0; b < m2; ++b)
      for (int c = 0; c < m2; ++c) C[((a + m1) * m + b + m1) * m + c + m1] = B[(a * m2 + b) * m2 + c];
  return C;
}

/// Para-complex constants whose null-basis projections are the two given real tables.
inline std::vector<ParaComplex> split_combine(const std::vector<ParaComplex>& plus,
                                              const std::vector<ParaComplex>& minus) {
  std::vector<ParaComplex> C(plus.size());
  for (std::size_t i = 0; i < C.size(); ++i) C[i] = unsplit(plus[i].re, minus[i].re);
  return C;
}

// ---------------------------------------------------------------------------
// Frames.

struct LambdaFrame {
  int m = 0;
  ExprMatrix lambda;
  std::vector<ExprMatrix> dlambda;  // d_c lambda
  ExprMatrix lambda_bar;
  std::vector<ExprMatrix> dlambda_bar;
  std::optional<PolyMatrix> poly;
  int order = -1;  // series order, -1 for user frames
  int sign = 1;
};

inline LambdaFrame make_frame(int m, ExprMatrix lambda) {
  LambdaFrame f;
  f.m = m;
  f.lambda = std::move(lambda);
  f.lambda_bar = conj_matrix(f.lambda);
  for (int c = 0; c < m; ++c) {
    f.dlambda.push_back(diff_matrix(f.lambda, c + 1, false));
    f.dlambda_bar.push_back(conj_matrix(f.dlambda.back()));
  }
  return f;
}

inline LambdaFrame make_frame(int m, PolyMatrix poly) {
  ExprMatrix e(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) e(a, b) = poly(a, b).to_expression();
  LambdaFrame f = make_frame(m, std::move(e));
  f.poly = std::move(poly);
  return f;
}

inline PolyMatrix poly_identity(int m) {
  PolyMatrix I(m, m, Polynomial(m));
  for (int a = 0; a < m; ++a) I(a, a) = Polynomial::constant(m, {1.0, 0.0});
  return I;
}

inline LambdaFrame identity_frame(int m) {
  LambdaFrame f = make_frame(m, poly_identity(m));
  f.order = 0;
  return f;
}

inline LambdaFrame constant_frame(const PCMatrix& M) {
  const int m = int(M.rows());
  PolyMatrix P(m, m, Polynomial(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) P(a, b) = Polynomial::constant(m, M(a, b));
  return make_frame(m, std::move(P));
}

inline PolyMatrix poly_product(const PolyMatrix& A, const PolyMatrix& B) {
  const int m = int(A.rows());
  PolyMatrix out(m, m, Polynomial(m));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) out(i, j) += A(i, k) * B(k, j);
  return out;
}

/// (ad_z)^a_b = sign C^a_cb z^c
inline PolyMatrix ad_matrix(const LieAlgebraData& L, int sign) {
  const int m = L.m;
  PolyMatrix ad(m, m, Polynomial(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (!(L(a, c, b) == ParaComplex{})) ad(a, b) += Polynomial::variable(m, c) * (L(a, c, b) * double(sign));
  return ad;
}

/// sum_{k=0}^{N-1} (ad_z)^k / (k+1)!
inline LambdaFrame series_frame(const LieAlgebraData& L, int order, int sign) {
  const int m = L.m;
  PolyMatrix sum = poly_identity(m);
  if (order > 1) {
    PolyMatrix ad = ad_matrix(L, sign), power = poly_identity(m);
    double fact = 1.0;
    for (int k = 1; k < order; ++k) {
      power = poly_product(power, ad);
      fact *= double(k + 1);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sum(a, b) += power(a, b) * ParaComplex{1.0 / fact, 0.0};
    }
  }
  LambdaFrame f = make_frame(m, std::move(sum));
  f.order = std::max(order, 0);
  f.sign = sign;
  return f;
}

/// d_c l^d_b - d_b l^d_c + C^d_pq l^p_b l^q_c as collected polynomials at (d*m + c)*m + b.
inline std::vector<Polynomial> mc_residual_polynomials(const LieAlgebraData& L, const PolyMatrix& lambda,
                                                       double chop = 1e-12) {
  const int m = L.m;
  std::vector<Polynomial> out;
  for (int d = 0; d < m; ++d)
    for (int c = 0; c < m; ++c)
      for (int b = 0; b < m; ++b) {
        Polynomial r = lambda(d, b).derivative(c) - lambda(d, c).derivative(b);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q)
            if (!(L(d, p, q) == ParaComplex{})) r += lambda(p, b) * lambda(q, c) * L(d, p, q);
        out.push_back(r.chopped(chop));
      }
  return out;
}

/// Largest Maurer-Cartan residual component at one point.
inline double mc_residual_at(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p,
                             const std::vector<Polynomial>* collected = nullptr) {
  const int m = L.m;
  double v = 0.0;
  if (collected) {
    for (const auto& r : *collected) v = std::max(v, abs_max(r.evaluate(p.coords())));
    return v;
  }
  PCMatrix l = evaluate_matrix(f.lambda, p);
  std::vector<PCMatrix> dl;
  for (int c = 0; c < m; ++c) dl.push_back(evaluate_matrix(f.dlambda[c], p));
  for (int d = 0; d < m; ++d)
    for (int c = 0; c < m; ++c)
      for (int b = 0; b < m; ++b) {
        ParaComplex r = dl[c](d, b) - dl[b](d, c);
        for (int q = 0; q < m; ++q)
          for (int s = 0; s < m; ++s) r += L(d, q, s) * l(q, b) * l(s, c);
        v = std::max(v, abs_max(r));
      }
  return v;
}

struct McReport {
  double residual = 0.0;
  std::vector<double> per_point;
  bool pass = false;
};

inline McReport mc_check(const LieAlgebraData& L, const LambdaFrame& f, std::span<const EvalPoint> samples,
                         double tol) {
  McReport r;
  std::optional<std::vector<Polynomial>> collected;
  if (f.poly) collected = mc_residual_polynomials(L, *f.poly);
  for (const auto& p : samples) {
    double v = mc_residual_at(L, f, p, collected ? &*collected : nullptr);
    r.per_point.push_back(v);
    r.residual = std::max(r.residual, v);
  }
  r.pass = r.residual < tol;
  return r;
}

/// Deterministic points at Euclidean radius r (over all real components).
inline std::vector<EvalPoint> probe_points(int m, double r, int count = 2) {
  std::vector<EvalPoint> out;
  for (int k = 0; k < count; ++k) {
    std::vector<ParaComplex> c(m);
    double norm = 0.0;
    for (int a = 0; a < m; ++a) {
      c[a] = {std::cos(1.3 * a + 0.7 * k + 0.4), 0.6 * std::sin(2.1 * a + 1.1 * k + 0.3)};
      norm += c[a].re * c[a].re + c[a].im * c[a].im;
    }
    norm = std::sqrt(norm);
    for (auto& z : c) z = z * (r / norm);
    out.emplace_back(std::move(c));
  }
  return out;
}

/// Series frame of order N with the sign of ad_z chosen by probing the Maurer-Cartan residual.
inline LambdaFrame bch_lambda_series(const LieAlgebraData& L, int order) {
  if (order <= 0) return identity_frame(L.m);
  constexpr double r1 = 1e-2, r2 = 5e-3, floor = 1e-14;
  for (int sign : {1, -1}) {
    LambdaFrame f = series_frame(L, order, sign);
    auto p1 = probe_points(L.m, r1), p2 = probe_points(L.m, r2);
    double a = mc_check(L, f, p1, 0.0).residual, b = mc_check(L, f, p2, 0.0).residual;
    if (a < floor || (b > 0.0 && std::log2(a / b) >= order - 1.5)) return f;
  }
  throw NoSignWorks();
}

// ---------------------------------------------------------------------------
// Metric.

inline ExprMatrix invariant_metric_exprs(const LieAlgebraData& L, const LambdaFrame& f) {
  const int m = L.m;
  ExprMatrix g(m, m);
  if (f.poly) {
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        Polynomial acc(m);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q)
            if (!(L.killing(p, q) == ParaComplex{})) acc += (*f.poly)(p, a) * (*f.poly)(q, b) * L.killing(p, q);
        g(a, b) = g(b, a) = acc.to_expression();
      }
    return g;
  }
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Expression acc(0.0);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          if (!(L.killing(p, q) == ParaComplex{})) acc += Expression(L.killing(p, q)) * f.lambda(p, a) * f.lambda(q, b);
      g(a, b) = g(b, a) = acc;
    }
  return g;
}

inline ParaMetric invariant_metric(const LieAlgebraData& L, const LambdaFrame& f) {
  if (!L.semisimple) throw NotSemisimple();
  return ParaMetric(L.m, invariant_metric_exprs(L, f));
}

template <class S>
Matrix<S> lambda_at(const LambdaFrame& f, const std::vector<S>& slots, bool barred = false) {
  return evaluate_matrix<S>(barred ? f.lambda_bar : f.lambda, slots);
}

/// g = l^T C l at a point.
inline PCMatrix lie_metric_at(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p) {
  PCMatrix l = evaluate_matrix(f.lambda, p);
  return l.transposed() * L.killing * l;
}

// ---------------------------------------------------------------------------
// Connection.

/// Symmetrised form 1/2 lt^a_d (d_c l^d_b + d_b l^d_c) on one sheet.
template <class S>
Tensor3<S> lie_connection_sheet(const LambdaFrame& f, const std::vector<S>& slots, bool barred,
                                double eps = default_inverse_epsilon) {
  const int m = f.m;
  Matrix<S> lt = inverse(lambda_at<S>(f, slots, barred), eps);
  std::vector<Matrix<S>> dl;
  for (int c = 0; c < m; ++c) dl.push_back(evaluate_matrix<S>(barred ? f.dlambda_bar[c] : f.dlambda[c], slots));
  Tensor3<S> out(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = b; c < m; ++c) {
        S acc{};
        for (int d = 0; d < m; ++d) acc += lt(a, d) * (dl[c](d, b) + dl[b](d, c));
        out(a, b, c) = out(a, c, b) = acc * 0.5;
      }
  return out;
}

/// lt^a_d (d_c l^d_b + 1/2 C^d_pq l^p_b l^q_c)
inline Tensor3<ParaComplex> lie_connection_first_form(const LieAlgebraData& L, const LambdaFrame& f,
                                                      const EvalPoint& p, double eps = default_inverse_epsilon) {
  const int m = L.m;
  PCMatrix l = evaluate_matrix(f.lambda, p), lt = inverse(l, eps);
  std::vector<PCMatrix> dl;
  for (int c = 0; c < m; ++c) dl.push_back(evaluate_matrix(f.dlambda[c], p));
  Tensor3<ParaComplex> out(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        ParaComplex acc;
        for (int d = 0; d < m; ++d) {
          ParaComplex inner = dl[c](d, b);
          for (int q = 0; q < m; ++q)
            for (int s = 0; s < m; ++s) inner += L(d, q, s) * l(q, b) * l(s, c) * 0.5;
          acc += lt(a, d) * inner;
        }
        out(a, b, c) = acc;
      }
  return out;
}

inline Tensor3<ParaComplex> lie_connection(const LambdaFrame& f, const EvalPoint& p,
                                           double eps = default_inverse_epsilon) {
  return lie_connection_sheet<ParaComplex>(f, p.slots(), false, eps);
}

/// The Lie connection over the full index range (barred sheet from the conjugate frame).
struct LieConnectionField {
  LambdaFrame frame;
  double eps = default_inverse_epsilon;
  int dim() const { return 2 * frame.m; }
  template <class S>
  Tensor3<S> operator()(const std::vector<S>& slots) const {
    const int m = frame.m;
    Tensor3<S> out(2 * m);
    for (int s = 0; s < 2; ++s) {
      Tensor3<S> g = lie_connection_sheet<S>(frame, slots, s == 1, eps);
      const int o = s * m;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) out(o + a, o + b, o + c) = g(a, b, c);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Curvature identities.

/// R^d_{c,ab} = -1/4 lt^d_f C^f_pq C^q_rs l^p_c l^r_a l^s_b
template <class S>
Tensor4<S> lie_curvature_at(const LieAlgebraData& L, const LambdaFrame& f, const std::vector<S>& slots,
                            double eps = default_inverse_epsilon) {
  const int m = L.m;
  Matrix<S> l = lambda_at<S>(f, slots), lt = inverse(l, eps);
  Tensor3<S> T(m);  // T^q_ab = C^q_rs l^r_a l^s_b
  for (int q = 0; q < m; ++q)
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) {
        if (L(q, r, s) == ParaComplex{}) continue;
        S cq{L(q, r, s)};
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) T(q, a, b) += cq * l(r, a) * l(s, b);
      }
  Tensor4<S> U(m);  // U^f_{c,ab} = C^f_pq l^p_c T^q_ab
  for (int fi = 0; fi < m; ++fi)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        if (L(fi, p, q) == ParaComplex{}) continue;
        S cf{L(fi, p, q)};
        for (int c = 0; c < m; ++c)
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) U(fi, c, a, b) += cf * l(p, c) * T(q, a, b);
      }
  Tensor4<S> R(m);
  for (int d = 0; d < m; ++d)
    for (int fi = 0; fi < m; ++fi)
      for (int c = 0; c < m; ++c)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) R(d, c, a, b) += lt(d, fi) * U(fi, c, a, b) * -0.25;
  return R;
}

inline Tensor4<ParaComplex> lie_curvature(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p,
                                          double eps = default_inverse_epsilon) {
  return lie_curvature_at<ParaComplex>(L, f, p.slots(), eps);
}

struct LieEinsteinReport {
  PCMatrix ricci;  // R_ca = R^b_{c,ab}
  PCMatrix g;
  double residual = 0.0;  // max |R_ab + g_ab / 4|
  ParaComplex scalar;     // g^ab R_ab
  ParaComplex einstein_constant;
};

inline LieEinsteinReport lie_ricci_and_einstein(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p,
                                                double eps = default_inverse_epsilon) {
  const int m = L.m;
  Tensor4<ParaComplex> R = lie_curvature(L, f, p, eps);
  LieEinsteinReport r;
  r.ricci = PCMatrix(m, m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) r.ricci(c, a) += R(b, c, a, b);
  r.g = lie_metric_at(L, f, p);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) r.residual = std::max(r.residual, abs_max(r.ricci(a, b) + r.g(a, b) * 0.25));
  if (!L.semisimple) throw NotSemisimple();
  r.scalar = trace_with(inverse(r.g, eps), r.ricci);
  r.einstein_constant = r.scalar * (1.0 / m);
  return r;
}

/// R_abcd = -1/4 C_tf C^f_pq C^q_rs l^p_a l^t_b l^r_c l^s_d, stored at (a,b,c,d).
inline Tensor4<ParaComplex> lie_lowered_curvature(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p) {
  const int m = L.m;
  PCMatrix l = evaluate_matrix(f.lambda, p);
  // K_{tpq r s} contracted first: W_tprs = C_tf C^f_pq C^q_rs
  std::vector<ParaComplex> W(std::size_t(m) * m * m * m);
  auto w = [&](int t, int pp, int r, int s) -> ParaComplex& { return W[((std::size_t(t) * m + pp) * m + r) * m + s]; };
  for (int t = 0; t < m; ++t)
    for (int fi = 0; fi < m; ++fi) {
      if (L.killing(t, fi) == ParaComplex{}) continue;
      for (int pp = 0; pp < m; ++pp)
        for (int q = 0; q < m; ++q) {
          if (L(fi, pp, q) == ParaComplex{}) continue;
          ParaComplex k = L.killing(t, fi) * L(fi, pp, q);
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) w(t, pp, r, s) += k * L(q, r, s);
        }
    }
  Tensor4<ParaComplex> out(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          ParaComplex acc;
          for (int pp = 0; pp < m; ++pp)
            for (int t = 0; t < m; ++t)
              for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) acc += w(t, pp, r, s) * l(pp, a) * l(t, b) * l(r, c) * l(s, d);
          out(a, b, c, d) = acc * -0.25;
        }
  return out;
}

/// R_abcd = g_df R^f_{c,ab}, stored at (a,b,c,d).
inline Tensor4<ParaComplex> lie_lowered_composed(const LieAlgebraData& L, const LambdaFrame& f, const EvalPoint& p,
                                                 double eps = default_inverse_epsilon) {
  const int m = L.m;
  Tensor4<ParaComplex> R = lie_curvature(L, f, p, eps);
  PCMatrix g = lie_metric_at(L, f, p);
  Tensor4<ParaComplex> out(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          for (int fi = 0; fi < m; ++fi) out(a, b, c, d) += g(d, fi) * R(fi, c, a, b);
  return out;
}

/// k(Z,W) from k (g_ac g_bd - g_ad g_bc) Z^a Z^c W^b W^d = R_abcd Z^a Z^c W^b W^d.
inline ParaComplex lie_sectional(const LieAlgebraData& L, const LambdaFrame& f, const std::vector<ParaComplex>& Z,
                                 const std::vector<ParaComplex>& W, const EvalPoint& p,
                                 double eps = default_inverse_epsilon) {
  if (!L.semisimple) throw NotSemisimple();
  const int m = L.m;
  Tensor4<ParaComplex> R = lie_lowered_curvature(L, f, p);
  PCMatrix g = lie_metric_at(L, f, p);
  ParaComplex num, den;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          ParaComplex w = Z[a] * Z[c] * W[b] * W[d];
          num += R(a, b, c, d) * w;
          den += (g(a, c) * g(b, d) - g(a, d) * g(b, c)) * w;
        }
  try {
    return num * invert(den, eps);
  } catch (const ZeroDivisor&) {
    throw DegeneratePlane();
  }
}

/// Column b of the inverse frame.
inline std::vector<ParaComplex> right_invariant_field(const LambdaFrame& f, int b, const EvalPoint& p,
                                                      double eps = default_inverse_epsilon) {
  PCMatrix lt = inverse(evaluate_matrix(f.lambda, p), eps);
  std::vector<ParaComplex> out(f.m);
  for (int a = 0; a < f.m; ++a) out[a] = lt(a, b);
  return out;
}

/// max |R^d_{c,ab|e}| over the samples, derivative and connection taken from the frame.
inline double parallel_curvature_check(const LieAlgebraData& L, const LambdaFrame& f,
                                       std::span<const EvalPoint> samples, double eps = default_inverse_epsilon) {
  const int m = L.m;
  double v = 0.0;
  for (const auto& p : samples) {
    auto slots = p.slots();
    Tensor3<ParaComplex> G = lie_connection_sheet<ParaComplex>(f, slots, false, eps);
    Tensor4<ParaComplex> R = lie_curvature_at<ParaComplex>(L, f, slots, eps);
    for (int e = 0; e < m; ++e) {
      Tensor4<Dual<ParaComplex>> Rd = lie_curvature_at<Dual<ParaComplex>>(L, f, seeded(slots, e), eps);
      for (int d = 0; d < m; ++d)
        for (int c = 0; c < m; ++c)
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
              ParaComplex acc = Rd(d, c, a, b).d;
              for (int k = 0; k < m; ++k)
                acc += G(d, e, k) * R(k, c, a, b) - G(k, e, c) * R(d, k, a, b) - G(k, e, a) * R(d, c, k, b) -
                       G(k, e, b) * R(d, c, a, k);
              v = std::max(v, abs_max(acc));
            }
    }
  }
  return v;
}

inline RealizedMetric para_kahler_norden_realization(const LieAlgebraData& L, const LambdaFrame& f) {
  return realize_metric(invariant_metric(L, f));
}

}  // namespace paraholo
