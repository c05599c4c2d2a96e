#pragma once

// Christoffel symbols, the fundamental tensors Phi and Psi, and the characteristic connection.
//
// All tensors are evaluated pointwise over the full index range (see tensor.hpp). The
// inverse metric is never formed symbolically; functions are templated on the scalar type
// so that the same code yields derivatives when called with dual numbers.

#include <random>
#include <vector>

#include "paraholo/dual.hpp"
#include "paraholo/metric.hpp"
#include "paraholo/real_oracle.hpp"
#include "paraholo/tensor.hpp"

namespace paraholo {

/// Gamma^c_ab = 1/2 G^cd (d_a G_bd + d_b G_ad - d_d G_ab) of one sheet, derivatives taken
/// in that sheet's own variables.
template <class S>
Tensor3<S> sheet_christoffel(const ParaMetric& m, bool barred, const std::vector<S>& slots,
                             double eps = default_inverse_epsilon) {
  const int n = m.n();
  const int own = barred ? n : 0;
  Matrix<S> ginv = inverse(m.sheet_at<S>(barred, slots, eps), eps);
  std::vector<Matrix<S>> dg;
  for (int k = 0; k < n; ++k) dg.push_back(m.dsheet_at<S>(barred, own + k, slots, eps));
  Tensor3<S> out(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        S acc{};
        for (int d = 0; d < n; ++d) acc += ginv(c, d) * (dg[a](b, d) + dg[b](a, d) - dg[d](a, b));
        out(c, a, b) = out(c, b, a) = acc * 0.5;
      }
  return out;
}

/// Characteristic connection L over the full index range: L^c_ab = Gamma^c_ab, its conjugate
/// block, and zero elsewhere.
template <class S>
Tensor3<S> characteristic_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  const int n = m.n();
  Tensor3<S> out(2 * n);
  for (int s = 0; s < 2; ++s) {
    Tensor3<S> g = sheet_christoffel<S>(m, s == 1, slots, eps);
    const int o = s * n;
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(o + c, o + a, o + b) = g(c, a, b);
  }
  return out;
}

/// Full block metric and its derivatives along every slot.
template <class S>
struct FullMetric {
  Matrix<S> G, Ginv;
  std::vector<Matrix<S>> dG;  // dG[D](A,B) = d_D G_AB
};

template <class S>
FullMetric<S> full_metric_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  const int n = m.n();
  FullMetric<S> f;
  Matrix<S> u = m.sheet_at<S>(false, slots, eps), l = m.sheet_at<S>(true, slots, eps);
  f.G = ParaMetric::block_diagonal(u, l);
  f.Ginv = ParaMetric::block_diagonal(inverse(u, eps), inverse(l, eps));
  for (int k = 0; k < 2 * n; ++k)
    f.dG.push_back(ParaMetric::block_diagonal(m.dsheet_at<S>(false, k, slots, eps), m.dsheet_at<S>(true, k, slots, eps)));
  return f;
}

/// Gamma^C_AB = 1/2 G^CD (d_A G_BD + d_B G_AD - d_D G_AB) with every index over the full range.
template <class S>
Tensor3<S> levi_civita_full_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  const int N = 2 * m.n();
  FullMetric<S> f = full_metric_at<S>(m, slots, eps);
  Tensor3<S> out(N);
  for (int c = 0; c < N; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        S acc{};
        for (int d = 0; d < N; ++d) acc += f.Ginv(c, d) * (f.dG[a](b, d) + f.dG[b](a, d) - f.dG[d](a, b));
        out(c, a, b) = out(c, b, a) = acc * 0.5;
      }
  return out;
}

/// Phi^cbar_ab = G^{cbar dbar} d_dbar G_ab and its conjugate block.
template <class S>
Tensor3<S> fundamental_phi_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  const int n = m.n();
  Tensor3<S> out(2 * n);
  for (int s = 0; s < 2; ++s) {
    const bool barred_upper = s == 0;  // s = 0 fills Phi^cbar_ab
    Matrix<S> ginv = inverse(m.sheet_at<S>(barred_upper, slots, eps), eps);
    const int up = barred_upper ? n : 0, low = barred_upper ? 0 : n;
    for (int d = 0; d < n; ++d) {
      Matrix<S> dg = m.dsheet_at<S>(!barred_upper, up + d, slots, eps);
      for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) out(up + c, low + a, low + b) += ginv(c, d) * dg(a, b);
    }
  }
  return out;
}

/// Phi as the difference of the twin and original full Christoffel symbols.
template <class S>
Tensor3<S> phi_from_twin_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  Tensor3<S> t = levi_civita_full_at<S>(m.twin(), slots, eps);
  Tensor3<S> g = levi_civita_full_at<S>(m, slots, eps);
  for (std::size_t i = 0; i < t.data().size(); ++i) t.data()[i] -= g.data()[i];
  return t;
}

/// Psi_{AB,C}: Psi_{ab,cbar} = d_cbar G_ab and Psi_{abar bbar,c} = d_c G_{abar bbar}; stored as (A,B,C).
template <class S>
Tensor3<S> fundamental_psi_at(const ParaMetric& m, const std::vector<S>& slots, double eps = default_inverse_epsilon) {
  const int n = m.n();
  Tensor3<S> out(2 * n);
  for (int c = 0; c < n; ++c) {
    Matrix<S> d0 = m.dsheet_at<S>(false, n + c, slots, eps);
    Matrix<S> d1 = m.dsheet_at<S>(true, c, slots, eps);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        out(a, b, n + c) = d0(a, b);
        out(n + a, n + b, c) = d1(a, b);
      }
  }
  return out;
}

/// L = Gamma + 1/2 Phi - 1/2 G^CD (Psi_{DA,B} + Psi_{DB,A}) computed over the full index range.
template <class S>
Tensor3<S> characteristic_full_at(const ParaMetric& m, const std::vector<S>& slots,
                                  double eps = default_inverse_epsilon) {
  const int N = 2 * m.n();
  Tensor3<S> g = levi_civita_full_at<S>(m, slots, eps);
  Tensor3<S> p = fundamental_phi_at<S>(m, slots, eps);
  Tensor3<S> psi = fundamental_psi_at<S>(m, slots, eps);
  FullMetric<S> f = full_metric_at<S>(m, slots, eps);
  for (int c = 0; c < N; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        S acc = p(c, a, b) * 0.5;
        for (int d = 0; d < N; ++d) acc -= f.Ginv(c, d) * (psi(d, a, b) + psi(d, b, a)) * 0.5;
        g(c, a, b) += acc;
      }
  return g;
}

// ---------------------------------------------------------------------------
// Connection fields: callables returning the connection at a slot vector of any scalar type.

struct CharacteristicField {
  ParaMetric metric;
  double eps = default_inverse_epsilon;
  int dim() const { return 2 * metric.n(); }
  template <class S>
  Tensor3<S> operator()(const std::vector<S>& slots) const {
    return characteristic_at<S>(metric, slots, eps);
  }
};

struct LeviCivitaField {
  ParaMetric metric;
  double eps = default_inverse_epsilon;
  int dim() const { return 2 * metric.n(); }
  template <class S>
  Tensor3<S> operator()(const std::vector<S>& slots) const {
    return levi_civita_full_at<S>(metric, slots, eps);
  }
};

/// Slots lifted one Dual layer, with unit derivative along slot `dir`.
template <class S>
std::vector<Dual<S>> seeded(const std::vector<S>& slots, int dir) {
  std::vector<Dual<S>> out;
  out.reserve(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k)
    out.emplace_back(slots[k], int(k) == dir ? S(ParaComplex{1.0, 0.0}) : S{});
  return out;
}

/// d_dir of a connection field at the given slots.
template <class F, class S>
Tensor3<S> field_derivative(const F& field, const std::vector<S>& slots, int dir) {
  Tensor3<Dual<S>> t = field(seeded(slots, dir));
  Tensor3<S> out(t.dim());
  for (std::size_t i = 0; i < t.data().size(); ++i) out.data()[i] = t.data()[i].d;
  return out;
}

template <class F>
Tensor3<ParaComplex> field_at(const F& field, const EvalPoint& p) {
  return field(p.slots());
}

// ---------------------------------------------------------------------------
// Axioms of the characteristic connection.

struct AxiomResiduals {
  double symmetry = 0.0;    // L^C_AB - L^C_BA
  double type = 0.0;        // components whose index types do not all agree
  double metric = 0.0;      // D_a G_bc and its conjugate
  double corollary = 0.0;   // D_A G_BC - Psi_{BC,A} over the full range
  double max() const { return std::max({symmetry, type, metric, corollary}); }
};

inline AxiomResiduals axiom_residuals(const ParaMetric& m, const Tensor3<ParaComplex>& L, const EvalPoint& p,
                                      double eps = default_inverse_epsilon) {
  const int n = m.n(), N = 2 * n;
  auto slots = p.slots();
  FullMetric<ParaComplex> f = full_metric_at<ParaComplex>(m, slots, eps);
  Tensor3<ParaComplex> psi = fundamental_psi_at<ParaComplex>(m, slots, eps);
  AxiomResiduals r;
  auto bar = [n](int A) { return A >= n; };
  for (int c = 0; c < N; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        r.symmetry = std::max(r.symmetry, abs_max(L(c, a, b) - L(c, b, a)));
        if (!(bar(c) == bar(a) && bar(a) == bar(b))) r.type = std::max(r.type, abs_max(L(c, a, b)));
      }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        ParaComplex dg = f.dG[a](b, c);
        for (int e = 0; e < N; ++e) dg -= L(e, a, b) * f.G(e, c) + L(e, a, c) * f.G(b, e);
        r.corollary = std::max(r.corollary, abs_max(dg - psi(b, c, a)));
        if (bar(a) == bar(b) && bar(b) == bar(c)) r.metric = std::max(r.metric, abs_max(dg));
      }
  return r;
}

/// Adds random symmetric, type-preserving perturbations to L and returns the smallest
/// resulting axiom violation over `trials` attempts. A value above tolerance means no
/// perturbation survived, i.e. L is the only connection satisfying the axioms.
inline double uniqueness_probe(const ParaMetric& m, const EvalPoint& p, int trials, unsigned seed,
                               double eps = default_inverse_epsilon) {
  const int n = m.n(), N = 2 * n;
  Tensor3<ParaComplex> L = characteristic_at<ParaComplex>(m, p.slots(), eps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(-3.0, 0.0);
  double smallest = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Tensor3<ParaComplex> P = L;
    const double s = std::pow(10.0, scale(rng));
    for (int c = 0; c < N; ++c)
      for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
          if (!((c >= n) == (a >= n) && (a >= n) == (b >= n))) continue;
          ParaComplex d{s * u(rng), s * u(rng)};
          P(c, a, b) += d;
          if (a != b) P(c, b, a) += d;
        }
    smallest = std::min(smallest, axiom_residuals(m, P, p, eps).max());
  }
  return smallest;
}

/// True iff d_abar L^c_ab vanishes at every sample.
template <class F>
bool is_paraholomorphic_connection(const F& field, int n, std::span<const EvalPoint> samples, double tol) {
  for (const auto& p : samples) {
    auto slots = p.slots();
    for (int k = n; k < 2 * n; ++k) {
      Tensor3<ParaComplex> d = field_derivative(field, slots, k);
      for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (abs_max(d(c, a, b)) >= tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Equivalent characterisations of a para-holomorphic metric.

struct HolomorphyAssertions {
  bool phi_zero = false;
  bool metric_paraholomorphic = false;
  bool nabla_i_zero = false;
  bool dg_zero = false;
  bool d_equals_nabla = false;
  double phi = 0.0, nabla_i = 0.0, dg = 0.0, d_minus_nabla = 0.0;

  bool consistent() const {
    return phi_zero == metric_paraholomorphic && phi_zero == nabla_i_zero && phi_zero == dg_zero &&
           phi_zero == d_equals_nabla;
  }
};

inline HolomorphyAssertions holomorphy_assertions(const ParaMetric& m, std::span<const EvalPoint> samples, double tol,
                                                  double eps = default_inverse_epsilon) {
  HolomorphyAssertions h;
  const int N = 2 * m.n();
  RealizedMetric rm = realize_metric(m);
  for (const auto& p : samples) {
    auto slots = p.slots();
    h.phi = std::max(h.phi, max_abs(fundamental_phi_at<ParaComplex>(m, slots, eps).data()));
    h.nabla_i = std::max(h.nabla_i, nabla_i_violation(real_geometry(rm, p, eps)));
    Tensor3<ParaComplex> L = characteristic_at<ParaComplex>(m, slots, eps);
    Tensor3<ParaComplex> G = levi_civita_full_at<ParaComplex>(m, slots, eps);
    h.d_minus_nabla = std::max(h.d_minus_nabla, max_diff(L.data(), G.data()));
    FullMetric<ParaComplex> f = full_metric_at<ParaComplex>(m, slots, eps);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) {
          ParaComplex dg = f.dG[a](b, c);
          for (int e = 0; e < N; ++e) dg -= L(e, a, b) * f.G(e, c) + L(e, a, c) * f.G(b, e);
          h.dg = std::max(h.dg, abs_max(dg));
        }
  }
  h.phi_zero = h.phi < tol;
  h.metric_paraholomorphic = is_paraholomorphic_metric(m, samples, tol, eps);
  h.nabla_i_zero = h.nabla_i < tol;
  h.dg_zero = h.dg < tol;
  h.d_equals_nabla = h.d_minus_nabla < tol;
  return h;
}

}  // namespace paraholo
