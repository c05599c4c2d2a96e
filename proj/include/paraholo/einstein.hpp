#pragma once

// Einstein diagnostics: constants, scalar curvatures K, K*, Khat and the real/para-complex correspondence.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "paraholo/curvature.hpp"
#include "paraholo/metric.hpp"
#include "paraholo/real_oracle.hpp"

namespace paraholo {

struct EinsteinPoint {
  ParaComplex lambda;  // (1/n) G^ab Ric_ab
  double residual = 0.0;
  double mixed = 0.0;
};

struct EinsteinReport {
  bool is_einstein = false;
  ParaComplex lambda;  // value at the first sample
  double K = 0.0, K_star = 0.0;
  ParaComplex K_hat;
  double residual = 0.0;  // max |Ric_ab - lambda G_ab|
  double spread = 0.0;    // max |lambda_i - lambda_0|
  double mixed = 0.0;     // max |Ric_{c abar}|
  std::vector<EinsteinPoint> points;
};

/// Candidate constant per point from curvature data already computed at the samples.
inline EinsteinReport extract_einstein_constant(std::span<const CurvatureData> data, double tol) {
  EinsteinReport r;
  for (const auto& cd : data) {
    PCMatrix ric = cd.ricci_block(), G = cd.metric_block();
    EinsteinPoint pt;
    pt.lambda = trace_with(cd.inverse_block(), ric) * (1.0 / cd.n);
    for (int c = 0; c < cd.n; ++c)
      for (int a = 0; a < cd.n; ++a) pt.residual = std::max(pt.residual, abs_max(ric(c, a) - pt.lambda * G(c, a)));
    pt.mixed = cd.mixed_ricci();
    r.points.push_back(pt);
  }
  if (r.points.empty()) return r;
  r.lambda = r.points.front().lambda;
  r.K_hat = r.lambda * double(data.front().n);
  for (const auto& pt : r.points) {
    r.residual = std::max(r.residual, pt.residual);
    r.mixed = std::max(r.mixed, pt.mixed);
    r.spread = std::max(r.spread, abs_max(pt.lambda - r.lambda));
  }
  r.is_einstein = r.spread < tol && r.residual < tol && r.mixed < tol;
  return r;
}

inline EinsteinReport extract_einstein_constant(const ParaMetric& m, std::span<const EvalPoint> samples, double tol,
                                                double eps = default_inverse_epsilon) {
  std::vector<CurvatureData> data;
  for (const auto& p : samples) data.push_back(curvature_data(m, p, eps));
  EinsteinReport r = extract_einstein_constant(std::span<const CurvatureData>(data), tol);
  if (!samples.empty()) {
    RealGeometry geo = real_geometry(realize_metric(m), samples.front(), eps);
    Eigen::MatrixXd Q = Eigen::FullPivLU<Eigen::MatrixXd>(geo.g).solve(geo.ricci);
    r.K = Q.trace();
    r.K_star = (i_operator(m.n()) * Q).trace();
  }
  return r;
}

struct ScalarCurvatures {
  double K = 0.0, K_star = 0.0;
  ParaComplex K_hat;
  double hat_relation = 0.0;  // |Khat - (K + e K*)/2|
  double qi = 0.0;   // |QI - IQ|
  Eigen::MatrixXd Q;
};

/// Q solves g Q = Ric(g); K = Tr Q, K* = Tr(I Q), Khat = Tr(Qhat).
inline ScalarCurvatures scalar_curvatures(const Eigen::MatrixXd& g, const Eigen::MatrixXd& real_ricci,
                                          const CurvatureData& cd) {
  const int n = cd.n;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw SingularRealMetric();
  ScalarCurvatures s;
  s.Q = lu.solve(real_ricci);
  Eigen::MatrixXd I = i_operator(n);
  s.K = s.Q.trace();
  s.K_star = (I * s.Q).trace();
  s.K_hat = trace_with(cd.inverse_block(), cd.ricci_block());
  s.hat_relation = abs_max(s.K_hat - ParaComplex{0.5 * s.K, 0.5 * s.K_star});
  s.qi = (s.Q * I - I * s.Q).cwiseAbs().maxCoeff();
  return s;
}

inline ScalarCurvatures scalar_curvatures(const ParaMetric& m, const EvalPoint& p,
                                          double eps = default_inverse_epsilon) {
  RealGeometry geo = real_geometry(realize_metric(m), p, eps);
  return scalar_curvatures(geo.g, geo.ricci, curvature_data(m, p, eps));
}

struct CorrespondenceReport {
  ParaComplex lambda;
  bool pc_einstein = false;    // Ric_ab = lambda G_ab with constant lambda
  bool pc_real_constant = false;
  bool real_einstein = false;  // Ric(g) = l g with constant real l
  bool agree = false;          // biconditional of the real-constant statement
  double pc_residual = 0.0;
  double real_residual = 0.0;
  double split_ricci_residual = 0.0;       // |Ric(g) - l1 g - l2 g I|
  double constants_residual = 0.0; // |l1 - K/2n| and |l2 - K*/2n|
  double hat_relation = 0.0;
  double qi = 0.0;
};

inline CorrespondenceReport check_theorem_correspondence(const ParaMetric& m, std::span<const EvalPoint> samples,
                                                         double tol, double eps = default_inverse_epsilon) {
  const int n = m.n();
  RealizedMetric rm = realize_metric(m);
  std::vector<CurvatureData> data;
  for (const auto& p : samples) data.push_back(curvature_data(m, p, eps));
  EinsteinReport er = extract_einstein_constant(std::span<const CurvatureData>(data), tol);

  CorrespondenceReport r;
  r.lambda = er.lambda;
  r.pc_residual = er.residual;
  r.pc_einstein = er.is_einstein;
  r.pc_real_constant = er.is_einstein && std::abs(er.lambda.im) < tol;

  Eigen::MatrixXd I = i_operator(n);
  double real_lambda0 = 0.0, spread = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    RealGeometry geo = real_geometry(rm, samples[i], eps);
    ScalarCurvatures sc = scalar_curvatures(geo.g, geo.ricci, data[i]);
    const double l = sc.K / (2.0 * n);
    if (i == 0) real_lambda0 = l;
    spread = std::max(spread, std::abs(l - real_lambda0));
    r.real_residual = std::max(r.real_residual, (geo.ricci - l * geo.g).cwiseAbs().maxCoeff());
    const double l1 = er.points[i].lambda.re, l2 = er.points[i].lambda.im;
    r.split_ricci_residual = std::max(r.split_ricci_residual, (geo.ricci - l1 * geo.g - l2 * geo.g * I).cwiseAbs().maxCoeff());
    r.constants_residual =
        std::max({r.constants_residual, std::abs(l1 - sc.K / (2.0 * n)), std::abs(l2 - sc.K_star / (2.0 * n))});
    r.hat_relation = std::max(r.hat_relation, sc.hat_relation);
    r.qi = std::max(r.qi, sc.qi);
  }
  r.real_einstein = spread < tol && r.real_residual < tol;
  r.agree = r.pc_real_constant == r.real_einstein;
  return r;
}

struct TwinTransfer {
  EinsteinReport original, twin;
  double violation = 0.0;  // |lambda_twin - e lambda|
};

inline TwinTransfer twin_transfer(const ParaMetric& m, std::span<const EvalPoint> samples, double tol,
                                  double eps = default_inverse_epsilon) {
  TwinTransfer t;
  t.original = extract_einstein_constant(m, samples, tol, eps);
  t.twin = extract_einstein_constant(m.twin(), samples, tol, eps);
  for (std::size_t i = 0; i < t.original.points.size(); ++i)
    t.violation = std::max(
        t.violation, abs_max(t.twin.points[i].lambda - ParaComplex{0.0, 1.0} * t.original.points[i].lambda));
  return t;
}

/// max over samples and a of |dK(d/dx^a) - dK*(d/dy^a)| and |dK(d/dy^a) - dK*(d/dx^a)| by central differences.
inline double scalar_cr_violation(const ParaMetric& m, std::span<const EvalPoint> samples, double h = 1e-4,
                                  double eps = default_inverse_epsilon) {
  const int n = m.n();
  double v = 0.0;
  for (const auto& p : samples)
    for (int a = 0; a < n; ++a) {
      auto at = [&](ParaComplex delta) {
        std::vector<ParaComplex> c = p.coords();
        c[a] += delta;
        return scalar_curvatures(m, EvalPoint(c), eps);
      };
      ScalarCurvatures xp = at({h, 0}), xm = at({-h, 0}), yp = at({0, h}), ym = at({0, -h});
      const double dKx = (xp.K - xm.K) / (2 * h), dKy = (yp.K - ym.K) / (2 * h);
      const double dSx = (xp.K_star - xm.K_star) / (2 * h), dSy = (yp.K_star - ym.K_star) / (2 * h);
      v = std::max({v, std::abs(dKx - dSy), std::abs(dKy - dSx)});
    }
  return v;
}

}  // namespace paraholo
