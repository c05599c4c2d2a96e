#pragma once

// Classical Riemannian geometry of a realized metric in real coordinates (x^1..x^n, y^1..y^n).
//
// Everything here is recomputed from the real metric components with textbook formulas;
// only the expression evaluator is shared with the para-complex pipeline. Derivatives of the
// metric come from hyper-dual evaluation, so they are exact up to rounding.

#include <vector>

#include <Eigen/Dense>

#include "paraholo/dual.hpp"
#include "paraholo/errors.hpp"
#include "paraholo/expression.hpp"
#include "paraholo/metric.hpp"

namespace paraholo {

struct RealGeometry {
  int dim = 0;
  Eigen::MatrixXd g, ginv;
  std::vector<Eigen::MatrixXd> dg;                // dg[l](i,j) = d_l g_ij
  std::vector<std::vector<Eigen::MatrixXd>> ddg;  // ddg[k][l](i,j)
  std::vector<Eigen::MatrixXd> gamma;             // gamma[r](m,n) = Gamma^r_mn
  std::vector<double> riemann;                    // R^r_{s m n} at ((r*d + s)*d + m)*d + n
  Eigen::MatrixXd ricci;                          // R_sn = R^r_{s r n}

  double R(int r, int s, int m, int n) const { return riemann[((std::size_t(r) * dim + s) * dim + m) * dim + n]; }
};

namespace detail {

using HyperComplex = BasicParaComplex<HyperDual>;

inline std::vector<HyperComplex> hyper_slots(const EvalPoint& p, int k, int l) {
  const int n = int(p.dimension());
  std::vector<HyperDual> coord(2 * n);
  for (int c = 0; c < 2 * n; ++c) {
    double v = c < n ? p[c].re : p[c - n].im;
    coord[c] = HyperDual(v, c == k ? 1.0 : 0.0, c == l ? 1.0 : 0.0, 0.0);
  }
  std::vector<HyperComplex> slots(2 * n);
  for (int a = 0; a < n; ++a) {
    slots[a] = HyperComplex(coord[a], coord[n + a]);
    slots[n + a] = HyperComplex(coord[a], -coord[n + a]);
  }
  return slots;
}

}  // namespace detail

inline RealGeometry real_geometry(const RealizedMetric& rm, const EvalPoint& p, double eps = default_inverse_epsilon) {
  const int d = 2 * rm.n;
  RealGeometry geo;
  geo.dim = d;
  geo.g = Eigen::MatrixXd::Zero(d, d);
  geo.dg.assign(d, Eigen::MatrixXd::Zero(d, d));
  geo.ddg.assign(d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));

  for (int k = 0; k < d; ++k)
    for (int l = k; l < d; ++l) {
      auto slots = detail::hyper_slots(p, k, l);
      std::span<const detail::HyperComplex> s(slots);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          HyperDual v = evaluate_slots<detail::HyperComplex>(rm.g(i, j), s, eps).re;
          geo.g(i, j) = v.a;
          geo.dg[k](i, j) = v.b;
          geo.dg[l](i, j) = v.c;
          geo.ddg[k][l](i, j) = geo.ddg[l][k](i, j) = v.d;
        }
    }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(geo.g);
  if (!(std::abs(lu.determinant()) > eps)) throw SingularRealMetric();
  geo.ginv = lu.inverse();

  // Gamma^r_mn and its derivatives.
  auto first_kind = [&](int s, int m, int n) { return 0.5 * (geo.dg[m](s, n) + geo.dg[n](s, m) - geo.dg[s](m, n)); };
  auto dfirst_kind = [&](int q, int s, int m, int n) {
    return 0.5 * (geo.ddg[q][m](s, n) + geo.ddg[q][n](s, m) - geo.ddg[q][s](m, n));
  };
  geo.gamma.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int r = 0; r < d; ++r)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) {
        double acc = 0.0;
        for (int s = 0; s < d; ++s) acc += geo.ginv(r, s) * first_kind(s, m, n);
        geo.gamma[r](m, n) = acc;
      }
  // dgamma[q][r](m,n) = d_q Gamma^r_mn
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
  for (int q = 0; q < d; ++q) {
    Eigen::MatrixXd dginv = -geo.ginv * geo.dg[q] * geo.ginv;
    for (int r = 0; r < d; ++r)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          double acc = 0.0;
          for (int s = 0; s < d; ++s) acc += dginv(r, s) * first_kind(s, m, n) + geo.ginv(r, s) * dfirst_kind(q, s, m, n);
          dgamma[q][r](m, n) = acc;
        }
  }

  geo.riemann.assign(std::size_t(d) * d * d * d, 0.0);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          double acc = dgamma[m][r](n, s) - dgamma[n][r](m, s);
          for (int l = 0; l < d; ++l) acc += geo.gamma[r](m, l) * geo.gamma[l](n, s) - geo.gamma[r](n, l) * geo.gamma[l](m, s);
          geo.riemann[((std::size_t(r) * d + s) * d + m) * d + n] = acc;
        }
  geo.ricci = Eigen::MatrixXd::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int n = 0; n < d; ++n)
      for (int r = 0; r < d; ++r) geo.ricci(s, n) += geo.R(r, s, r, n);
  return geo;
}

inline Eigen::MatrixXd real_ricci_oracle(const RealizedMetric& g, const EvalPoint& p,
                                         double eps = default_inverse_epsilon) {
  return real_geometry(g, p, eps).ricci;
}

/// max |(nabla_m I)^r_n| for the Levi-Civita connection of the realized metric.
inline double nabla_i_violation(const RealGeometry& geo) {
  const int d = geo.dim;
  Eigen::MatrixXd I = i_operator(d / 2);
  double v = 0.0;
  for (int m = 0; m < d; ++m) {
    Eigen::MatrixXd G(d, d);  // G(r,l) = Gamma^r_{m l}
    for (int r = 0; r < d; ++r)
      for (int l = 0; l < d; ++l) G(r, l) = geo.gamma[r](m, l);
    v = std::max(v, (G * I - I * G).cwiseAbs().maxCoeff());
  }
  return v;
}

/// Largest violation of R(IX,Y) = R(X,IY) = I R(X,Y) over basis vectors.
inline double pure_curvature_violation(const RealGeometry& geo) {
  const int d = geo.dim;
  Eigen::MatrixXd I = i_operator(d / 2);
  auto op = [&](int m, int n) {  // matrix (r,s) of R(d_m, d_n)
    Eigen::MatrixXd M(d, d);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) M(r, s) = geo.R(r, s, m, n);
    return M;
  };
  double v = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      Eigen::MatrixXd ix = Eigen::MatrixXd::Zero(d, d), iy = Eigen::MatrixXd::Zero(d, d);
      for (int l = 0; l < d; ++l) {
        if (I(l, m) != 0.0) ix += I(l, m) * op(l, n);
        if (I(l, n) != 0.0) iy += I(l, n) * op(m, l);
      }
      Eigen::MatrixXd ir = I * op(m, n);
      v = std::max({v, (ix - iy).cwiseAbs().maxCoeff(), (ix - ir).cwiseAbs().maxCoeff()});
    }
  return v;
}

}  // namespace paraholo
