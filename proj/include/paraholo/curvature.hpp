#pragma once

// Curvature, Ricci and scalar curvature of a connection field, Einstein tensor, divergence,
// characteristic-Einstein classification, and comparisons with the real oracle.
//
// Curvature convention: R(d_A, d_B) d_C = R^D_{C,AB} d_D with
//   R^D_{C,AB} = d_A L^D_{BC} - d_B L^D_{AC} + L^D_{AE} L^E_{BC} - L^D_{BE} L^E_{AC}.
// Ricci is the trace Ric(Y, Z) = tr(X -> R(X, Y) Z), i.e. Ric_CA = R^B_{C,BA}.

#include <cmath>
#include <numbers>
#include <vector>

#include "paraholo/connection.hpp"
#include "paraholo/metric.hpp"
#include "paraholo/real_oracle.hpp"
#include "paraholo/tensor.hpp"

namespace paraholo {

template <class F, class S>
Tensor4<S> curvature_at(const F& field, const std::vector<S>& slots) {
  Tensor3<S> L = field(slots);
  const int N = L.dim();
  std::vector<Tensor3<S>> dL;
  for (int k = 0; k < N; ++k) dL.push_back(field_derivative(field, slots, k));
  Tensor4<S> R(N);
  for (int d = 0; d < N; ++d)
    for (int c = 0; c < N; ++c)
      for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
          S acc = dL[a](d, b, c) - dL[b](d, a, c);
          for (int e = 0; e < N; ++e) acc += L(d, a, e) * L(e, b, c) - L(d, b, e) * L(e, a, c);
          R(d, c, a, b) = acc;
          R(d, c, b, a) = -acc;
        }
  return R;
}

/// Ric_CA = R^B_{C,BA}
template <class S>
Matrix<S> ricci_from(const Tensor4<S>& R) {
  const int N = R.dim();
  Matrix<S> ric(N, N);
  for (int c = 0; c < N; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) ric(c, a) += R(b, c, b, a);
  return ric;
}

template <class S>
S trace_with(const Matrix<S>& ginv, const Matrix<S>& t) {
  S acc{};
  for (std::size_t c = 0; c < t.rows(); ++c)
    for (std::size_t a = 0; a < t.cols(); ++a) acc += ginv(c, a) * t(c, a);
  return acc;
}

/// Inverse of the full block metric at the slots.
template <class S>
Matrix<S> full_inverse_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  return ParaMetric::block_diagonal(inverse(m.sheet_at<S>(false, slots, eps), eps),
                                    inverse(m.sheet_at<S>(true, slots, eps), eps));
}

struct CurvatureData {
  int n = 0;
  Tensor4<ParaComplex> R;  // full index range
  PCMatrix ricci;          // full index range
  PCMatrix G, Ginv;        // full block metric and inverse
  ParaComplex rho;         // G^CA Ric_CA

  ParaComplex R_at(int d, int c, int a, int b) const { return R(d, c, a, b); }
  /// Ric_ca of the unbarred block.
  PCMatrix ricci_block() const {
    PCMatrix out(n, n);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) out(c, a) = ricci(c, a);
    return out;
  }
  PCMatrix metric_block() const {
    PCMatrix out(n, n);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) out(c, a) = G(c, a);
    return out;
  }
  PCMatrix inverse_block() const {
    PCMatrix out(n, n);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) out(c, a) = Ginv(c, a);
    return out;
  }
  /// max |Ric_{c abar}| together with its conjugate block.
  double mixed_ricci() const {
    double v = 0.0;
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) v = std::max({v, abs_max(ricci(c, n + a)), abs_max(ricci(n + c, a))});
    return v;
  }
};

/// Curvature data of an arbitrary connection field, with the metric supplying G for traces.
template <class F>
CurvatureData curvature_data(const F& field, const ParaMetric& m, const EvalPoint& p,
                             double eps = default_inverse_epsilon) {
  auto slots = p.slots();
  CurvatureData cd;
  cd.n = m.n();
  cd.R = curvature_at(field, slots);
  cd.ricci = ricci_from(cd.R);
  cd.G = m.full_at(p, eps);
  cd.Ginv = full_inverse_at<ParaComplex>(m, slots, eps);
  cd.rho = trace_with(cd.Ginv, cd.ricci);
  return cd;
}

/// Curvature data of the characteristic connection of m.
inline CurvatureData curvature_data(const ParaMetric& m, const EvalPoint& p, double eps = default_inverse_epsilon) {
  return curvature_data(CharacteristicField{m, eps}, m, p, eps);
}

/// rho = G^CA Ric_CA; throws NonRealScalar when its imaginary part exceeds tol.
inline ParaComplex scalar_curvature(const CurvatureData& cd, double tol) {
  if (std::abs(cd.rho.im) > tol) throw NonRealScalar(std::abs(cd.rho.im));
  return cd.rho;
}

/// R_ABCD = G_DF R^F_{C,AB}, stored at (A,B,C,D).
inline Tensor4<ParaComplex> lower_curvature(const CurvatureData& cd) {
  const int N = cd.R.dim();
  Tensor4<ParaComplex> out(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          ParaComplex acc;
          for (int f = 0; f < N; ++f) acc += cd.G(d, f) * cd.R(f, c, a, b);
          out(a, b, c, d) = acc;
        }
  return out;
}

/// G(R(Z1,Z2)Z1, Z2) / (G(Z1,Z1) G(Z2,Z2) - G(Z1,Z2)^2) for Z1, Z2 in T^{1,0}.
inline ParaComplex sectional_curvature(const CurvatureData& cd, const std::vector<ParaComplex>& z1,
                                       const std::vector<ParaComplex>& z2, double eps = default_inverse_epsilon) {
  const int n = cd.n;
  auto g = [&](const std::vector<ParaComplex>& u, const std::vector<ParaComplex>& v) {
    ParaComplex acc;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += cd.G(a, b) * u[a] * v[b];
    return acc;
  };
  ParaComplex num;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          ParaComplex w = z1[a] * z2[b] * z1[c] * z2[d];
          if (w == ParaComplex{}) continue;
          ParaComplex r;
          for (int f = 0; f < n; ++f) r += cd.G(d, f) * cd.R(f, c, a, b);
          num += r * w;
        }
  ParaComplex den = g(z1, z1) * g(z2, z2) - g(z1, z2) * g(z1, z2);
  try {
    return num * invert(den, eps);
  } catch (const ZeroDivisor&) {
    throw DegeneratePlane();
  }
}

// ---------------------------------------------------------------------------
// Einstein tensor.

struct EinsteinTensorData {
  PCMatrix E;      // E_AB = Ric_AB - rho/2 G_AB
  PCMatrix mixed;  // E^A_B
  PCMatrix T;      // E / (8 pi c)
  bool vacuum = false;
};

inline EinsteinTensorData einstein_tensor(const CurvatureData& cd, double c, double tol) {
  const std::size_t N = cd.ricci.rows();
  EinsteinTensorData out;
  out.E = PCMatrix(N, N);
  out.T = PCMatrix(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      out.E(a, b) = cd.ricci(a, b) - cd.G(a, b) * cd.rho * 0.5;
      out.T(a, b) = out.E(a, b) * (1.0 / (8.0 * std::numbers::pi * c));
    }
  out.mixed = cd.Ginv * out.E;
  out.vacuum = max_abs(cd.ricci) < tol;
  return out;
}

/// E^A_B of a connection field with traces taken against m, at scalar type S.
template <class F, class S>
Matrix<S> mixed_einstein_at(const F& field, const ParaMetric& m, const std::vector<S>& slots,
                            double eps = default_inverse_epsilon) {
  Matrix<S> ric = ricci_from(curvature_at(field, slots));
  Matrix<S> ginv = full_inverse_at<S>(m, slots, eps);
  S rho = trace_with(ginv, ric);
  Matrix<S> out = ginv * ric;
  for (std::size_t a = 0; a < out.rows(); ++a) out(a, a) -= rho * 0.5;
  return out;
}

/// max_B |E^A_{B|A}| at p, covariant derivative taken with the field itself.
template <class F>
double divergence_einstein(const F& field, const ParaMetric& m, const EvalPoint& p,
                           double eps = default_inverse_epsilon) {
  auto slots = p.slots();
  Tensor3<ParaComplex> L = field(slots);
  const int N = L.dim();
  PCMatrix E = mixed_einstein_at(field, m, slots, eps);
  std::vector<ParaComplex> div(N);
  for (int a = 0; a < N; ++a) {
    Matrix<Dual<ParaComplex>> Ed = mixed_einstein_at(field, m, seeded(slots, a), eps);
    for (int b = 0; b < N; ++b) div[b] += Ed(a, b).d;
  }
  for (int b = 0; b < N; ++b)
    for (int a = 0; a < N; ++a)
      for (int d = 0; d < N; ++d) div[b] += L(a, a, d) * E(d, b) - L(d, a, b) * E(a, d);
  double v = 0.0;
  for (const auto& x : div) v = std::max(v, abs_max(x));
  return v;
}

inline double divergence_einstein(const ParaMetric& m, const EvalPoint& p, double eps = default_inverse_epsilon) {
  return divergence_einstein(CharacteristicField{m, eps}, m, p, eps);
}

// ---------------------------------------------------------------------------
// Characteristic-Einstein classification.

struct EinsteinClassification {
  bool einstein = false;         // Ric_{c abar} = 0 and Ric_ca = f G_ca at every sample
  std::vector<ParaComplex> f;    // pointwise factor (1/n) G^ca Ric_ca
  double mixed_ricci = 0.0;      // max |Ric_{c abar}|
  double residual = 0.0;         // max |Ric_ca - f G_ca|
  bool rho_checked = false;      // n >= 3 and Einstein
  bool rho_anti_holomorphic = true;
  double rho_gradient = 0.0;     // max |d rho0 / dz^a| by finite differences
};

/// rho0 = G^ca Ric_ca of the unbarred block.
inline ParaComplex rho0(const ParaMetric& m, const EvalPoint& p, double eps = default_inverse_epsilon) {
  CurvatureData cd = curvature_data(m, p, eps);
  return trace_with(cd.inverse_block(), cd.ricci_block());
}

inline EinsteinClassification classify_characteristic_einstein(const ParaMetric& m,
                                                               std::span<const EvalPoint> samples, double tol,
                                                               double eps = default_inverse_epsilon) {
  EinsteinClassification out;
  const int n = m.n();
  for (const auto& p : samples) {
    CurvatureData cd = curvature_data(m, p, eps);
    PCMatrix ric = cd.ricci_block(), G = cd.metric_block();
    ParaComplex f = trace_with(cd.inverse_block(), ric) * (1.0 / n);
    out.f.push_back(f);
    out.mixed_ricci = std::max(out.mixed_ricci, cd.mixed_ricci());
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) out.residual = std::max(out.residual, abs_max(ric(c, a) - f * G(c, a)));
  }
  out.einstein = out.mixed_ricci < tol && out.residual < tol;
  if (out.einstein && n >= 3) {
    out.rho_checked = true;
    const double h = 1e-4;
    for (const auto& p : samples) {
      for (int a = 0; a < n; ++a) {
        auto at = [&](ParaComplex delta) {
          std::vector<ParaComplex> c = p.coords();
          c[a] += delta;
          return rho0(m, EvalPoint(c), eps);
        };
        ParaComplex dx = (at({h, 0}) - at({-h, 0})) * (0.5 / h);
        ParaComplex dy = (at({0, h}) - at({0, -h})) * (0.5 / h);
        // d/dz = (d/dx + e d/dy) / 2
        ParaComplex dz = (dx + ParaComplex{0, 1} * dy) * 0.5;
        out.rho_gradient = std::max(out.rho_gradient, abs_max(dz));
      }
    }
    out.rho_anti_holomorphic = out.rho_gradient < 1e-5;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparisons against the real-coordinate oracle.

/// Hat of a real basis vector: d/dx^a -> d/dz^a, d/dy^a -> e d/dz^a.
inline ParaComplex hat_factor(int mu, int n) { return mu < n ? ParaComplex{1, 0} : ParaComplex{0, 1}; }

/// max |Ric(ghat)(Xhat, Yhat) - 1/2 (Ric(g)(X,Y) + e Ric(g)(X,IY))| over real basis vectors.
inline double ricci_correspondence_violation(const CurvatureData& cd, const Eigen::MatrixXd& real_ricci) {
  const int n = cd.n;
  Eigen::MatrixXd ricI = real_ricci * i_operator(n);
  double v = 0.0;
  for (int mu = 0; mu < 2 * n; ++mu)
    for (int nu = 0; nu < 2 * n; ++nu) {
      ParaComplex lhs = hat_factor(mu, n) * hat_factor(nu, n) * cd.ricci(mu % n, nu % n);
      ParaComplex rhs{0.5 * real_ricci(mu, nu), 0.5 * ricI(mu, nu)};
      v = std::max(v, abs_max(lhs - rhs));
    }
  return v;
}

/// max |L(Xhat, Yhat) - hat(nabla_X Y)| over real basis vectors.
inline double christoffel_correspondence_violation(const Tensor3<ParaComplex>& L, const RealGeometry& geo) {
  const int n = geo.dim / 2;
  double v = 0.0;
  for (int mu = 0; mu < 2 * n; ++mu)
    for (int nu = 0; nu < 2 * n; ++nu)
      for (int c = 0; c < n; ++c) {
        ParaComplex lhs = hat_factor(mu, n) * hat_factor(nu, n) * L(c, mu % n, nu % n);
        ParaComplex rhs{geo.gamma[c](mu, nu), geo.gamma[n + c](mu, nu)};
        v = std::max(v, abs_max(lhs - rhs));
      }
  return v;
}

}  // namespace paraholo
