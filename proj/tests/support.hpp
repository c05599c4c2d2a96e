#pragma once

// Generators and small helpers shared by the test programs.

#include <random>
#include <string>
#include <vector>

#include <paraholo/paraholo.hpp>

namespace testing_support {

using paraholo::EvalPoint;
using paraholo::Expression;
using paraholo::ParaComplex;

inline ParaComplex random_pc(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng)};
}

/// Para-complex number whose modulus is bounded away from zero.
inline ParaComplex random_unit(std::mt19937_64& rng, double min_modulus = 0.2) {
  for (;;) {
    ParaComplex z = random_pc(rng);
    if (std::abs(paraholo::modulus(z)) > min_modulus) return z;
  }
}

inline EvalPoint random_point(std::mt19937_64& rng, int n, double lo = -0.8, double hi = 0.8) {
  std::vector<ParaComplex> c;
  for (int a = 0; a < n; ++a) c.push_back(random_pc(rng, lo, hi));
  return EvalPoint(c);
}

inline std::vector<EvalPoint> random_points(std::mt19937_64& rng, int n, int count, double lo = -0.8,
                                            double hi = 0.8) {
  std::vector<EvalPoint> out;
  for (int i = 0; i < count; ++i) out.push_back(random_point(rng, n, lo, hi));
  return out;
}

/// Random DSL source over n variables without divisions (so evaluation is total).
inline std::string random_source(std::mt19937_64& rng, int n, int depth, bool barred = true) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 10);
  std::uniform_int_distribution<int> var(1, n);
  std::uniform_int_distribution<int> small(0, 9);
  switch (pick(rng)) {
    case 0: return "z" + std::to_string(var(rng));
    case 1: return (barred ? "zb" : "z") + std::to_string(var(rng));
    case 2: return std::to_string(small(rng)) + "." + std::to_string(small(rng));
    case 3: return "e";
    case 4:
    case 5: return "(" + random_source(rng, n, depth - 1, barred) + " + " + random_source(rng, n, depth - 1, barred) + ")";
    case 6: return "(" + random_source(rng, n, depth - 1, barred) + " - " + random_source(rng, n, depth - 1, barred) + ")";
    case 7:
    case 8: return random_source(rng, n, depth - 1, barred) + "*" + random_source(rng, n, depth - 1, barred);
    case 9: return "(" + random_source(rng, n, depth - 1, barred) + ")^" + std::to_string(small(rng) % 3 + 1);
    default: return "exp(0.3*" + random_source(rng, n, depth - 1, barred) + ")";
  }
}

/// Random symmetric metric, diagonally dominant near the origin.
inline paraholo::ParaMetric random_metric(std::mt19937_64& rng, int n, bool holomorphic) {
  paraholo::ExprMatrix G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::string src = "0.2*(" + random_source(rng, n, 2, !holomorphic) + ")";
      if (a == b) src = std::to_string(2 + a) + " + " + src;
      G(a, b) = G(b, a) = paraholo::parse_expr(src, n);
    }
  return paraholo::ParaMetric(n, G);
}

inline double diff(const ParaComplex& a, const ParaComplex& b) { return paraholo::abs_max(a - b); }

/// A few para-holomorphic test metrics.
inline std::vector<paraholo::ParaMetric> holomorphic_metrics() {
  using paraholo::parse_expr;
  auto m = [](int n, std::vector<std::vector<std::string>> src) {
    paraholo::ExprMatrix G(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) G(a, b) = parse_expr(src[a][b], n);
    return paraholo::build_metric(n, G);
  };
  return {
      m(1, {{"1 + z1*z1"}}),
      m(1, {{"exp(z1)"}}),
      m(2, {{"1 + z1*z2", "0.3*z1"}, {"0.3*z1", "2 + e*z2*z2"}}),
      m(2, {{"1", "0"}, {"0", "1 + z1^2"}}),
      m(2, {{"2 + z2", "e*z1"}, {"e*z1", "exp(0.5*z1) + 1"}}),
  };
}

inline std::vector<paraholo::ParaMetric> non_holomorphic_metrics() {
  using paraholo::parse_expr;
  auto m = [](int n, std::vector<std::vector<std::string>> src) {
    paraholo::ExprMatrix G(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) G(a, b) = parse_expr(src[a][b], n);
    return paraholo::build_metric(n, G);
  };
  return {
      m(1, {{"z1 + zb1"}}),
      m(1, {{"2 + z1*zb1"}}),
      m(2, {{"1 + zb2*z1", "0.2*zb1"}, {"0.2*zb1", "2 + z2"}}),
      m(2, {{"exp(0.3*zb1)", "0"}, {"0", "1 + z1*z2 + zb2"}}),
  };
}

}  // namespace testing_support
