#include <gtest/gtest.h>

#include "support.hpp"

using namespace paraholo;
using testing_support::diff;

namespace {

ParaMetric metric(int n, std::vector<std::vector<std::string>> src) {
  ExprMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = parse_expr(src[i][j], n);
  return build_metric(n, m);
}

ParaMetric flat(int n) {
  std::vector<std::vector<std::string>> src(n, std::vector<std::string>(n, "0"));
  for (int i = 0; i < n; ++i) src[i][i] = "1";
  return metric(n, src);
}

ParaMetric sl2_metric() {
  LieAlgebraData L = validate_structure(3, sl2_table());
  return invariant_metric(L, bch_lambda_series(L, 6));
}

EvalPoint identity() { return EvalPoint(std::vector<ParaComplex>(3)); }

}  // namespace

TEST(Extract, FlatIsEinsteinWithZero) {
  auto s = default_sample_grid(2);
  EinsteinReport r = extract_einstein_constant(flat(2), s, 1e-12);
  EXPECT_TRUE(r.is_einstein);
  EXPECT_EQ(r.lambda, ParaComplex());
  EXPECT_EQ(r.K, 0.0);
  EXPECT_EQ(r.K_star, 0.0);
  EXPECT_EQ(r.points.size(), s.size());
}

TEST(Extract, Sl2InvariantMetric) {
  auto pts = probe_points(3, 1e-2, 4);
  EinsteinReport r = extract_einstein_constant(sl2_metric(), pts, 1e-6);
  EXPECT_TRUE(r.is_einstein);
  EXPECT_LT(diff(r.lambda, {-0.25, 0}), 1e-8);
  EXPECT_LT(diff(r.K_hat, {-0.75, 0}), 1e-8);
  for (const auto& pt : r.points) EXPECT_LT(diff(pt.lambda, {-0.25, 0}), 1e-6);
}

TEST(Extract, WarpedIsNotEinstein) {
  ParaMetric w = metric(2, {{"1", "0"}, {"0", "1 + z1^2"}});
  auto s = default_sample_grid(2);
  EinsteinReport r = extract_einstein_constant(w, s, 1e-9);
  EXPECT_FALSE(r.is_einstein);
  EXPECT_GT(r.spread, 1e-3);
  // Ric = -1/f^2 G pointwise, so the candidate constant follows the point.
  for (std::size_t i = 0; i < s.size(); ++i) {
    ParaComplex fi = invert(ParaComplex(1, 0) + s[i][0] * s[i][0]);
    EXPECT_LT(diff(r.points[i].lambda, -(fi * fi)), 1e-12);
    EXPECT_LT(r.points[i].residual, 1e-12);
  }
}

TEST(Scalar, FlatAndSl2) {
  ScalarCurvatures f = scalar_curvatures(flat(2), default_sample_grid(2)[0]);
  EXPECT_EQ(f.K, 0.0);
  EXPECT_EQ(f.K_star, 0.0);
  EXPECT_EQ(f.K_hat, ParaComplex());

  ScalarCurvatures s = scalar_curvatures(sl2_metric(), identity());
  EXPECT_NEAR(s.K, -1.5, 1e-8);
  EXPECT_NEAR(s.K_star, 0.0, 1e-8);
  EXPECT_LT(diff(s.K_hat, {-0.75, 0}), 1e-12);
  EXPECT_LT(s.hat_relation, 1e-8);

  ScalarCurvatures t = scalar_curvatures(sl2_metric().twin(), identity());
  EXPECT_NEAR(t.K, 0.0, 1e-8);
  EXPECT_NEAR(t.K_star, -1.5, 1e-8);
  EXPECT_LT(diff(t.K_hat, {0, -0.75}), 1e-12);
}

TEST(Scalar, HatIsHalfOfRealPair) {
  for (const auto& m : testing_support::holomorphic_metrics())
    for (const auto& p : default_sample_grid(m.n())) {
      ScalarCurvatures s = scalar_curvatures(m, p);
      EXPECT_LT(s.hat_relation, 1e-7);
      EXPECT_LT(s.qi, 1e-8);
    }
}

TEST(ScalarProperty, RandomHolomorphicMetrics) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 3;
    ParaMetric m = testing_support::random_metric(rng, n, true);
    ScalarCurvatures s = scalar_curvatures(m, testing_support::random_point(rng, n, -0.4, 0.4));
    const double scale = 1.0 + std::abs(s.K) + std::abs(s.K_star);
    ASSERT_LT(s.hat_relation, 1e-7 * scale);
    ASSERT_LT(s.qi, 1e-7 * scale);
  }
}

TEST(Scalar, NonHolomorphicMetricsBreakCommutation) {
  // Without para-holomorphy the realization is not para-Kaehler and Q need not commute with I.
  double worst = 0.0;
  for (const auto& m : testing_support::non_holomorphic_metrics())
    for (const auto& p : default_sample_grid(m.n())) worst = std::max(worst, scalar_curvatures(m, p).qi);
  EXPECT_GT(worst, 1e-3);
}

TEST(Scalar, SingularRealMetricThrows) {
  EXPECT_THROW(scalar_curvatures(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2),
                                 curvature_data(flat(1), default_sample_grid(1)[0])),
               SingularRealMetric);
}

TEST(Scalar, CauchyRiemannPair) {
  for (const auto& m : testing_support::holomorphic_metrics())
    EXPECT_LT(scalar_cr_violation(m, default_sample_grid(m.n())), 1e-5);
  ParaMetric w = metric(2, {{"1", "0"}, {"0", "1 + z1^2"}});
  EXPECT_LT(scalar_cr_violation(w, default_sample_grid(2)), 1e-5);
}

TEST(Correspondence, FlatAndSl2) {
  auto s2 = default_sample_grid(2);
  CorrespondenceReport f = check_theorem_correspondence(flat(2), s2, 1e-9);
  EXPECT_TRUE(f.pc_real_constant);
  EXPECT_TRUE(f.real_einstein);
  EXPECT_TRUE(f.agree);

  auto pts = probe_points(3, 1e-2, 4);
  CorrespondenceReport s = check_theorem_correspondence(sl2_metric(), pts, 1e-6);
  EXPECT_TRUE(s.pc_real_constant);
  EXPECT_TRUE(s.real_einstein);
  EXPECT_TRUE(s.agree);
  EXPECT_LT(diff(s.lambda, {-0.25, 0}), 1e-8);
  EXPECT_LT(s.split_ricci_residual, 1e-6);
  EXPECT_LT(s.constants_residual, 1e-8);

  // The twin is para-complex Einstein with constant -e/4, so the real metric is not Einstein.
  CorrespondenceReport t = check_theorem_correspondence(sl2_metric().twin(), pts, 1e-6);
  EXPECT_TRUE(t.pc_einstein);
  EXPECT_FALSE(t.pc_real_constant);
  EXPECT_FALSE(t.real_einstein);
  EXPECT_TRUE(t.agree);
  EXPECT_LT(diff(t.lambda, {0, -0.25}), 1e-8);
  EXPECT_LT(t.split_ricci_residual, 1e-6);
  EXPECT_LT(t.constants_residual, 1e-8);
}

TEST(Correspondence, AgreementOnTestMetrics) {
  for (const auto& m : testing_support::holomorphic_metrics()) {
    CorrespondenceReport r = check_theorem_correspondence(m, default_sample_grid(m.n()), 1e-9);
    EXPECT_TRUE(r.agree);
    EXPECT_LT(r.split_ricci_residual, 1e-7 * (1.0 + std::abs(r.lambda.re) + std::abs(r.lambda.im)) + r.pc_residual * 4);
  }
}

TEST(Twin, TransfersConstant) {
  auto pts = probe_points(3, 1e-2, 3);
  TwinTransfer t = twin_transfer(sl2_metric(), pts, 1e-6);
  EXPECT_LT(t.violation, 1e-10);
  EXPECT_TRUE(t.twin.is_einstein);
  EXPECT_LT(diff(t.twin.lambda, {0, -0.25}), 1e-8);
  EXPECT_NEAR(t.twin.K, 0.0, 1e-8);
  EXPECT_NEAR(t.twin.K_star, -1.5, 1e-8);

  for (const auto& m : testing_support::holomorphic_metrics()) {
    auto s = default_sample_grid(m.n());
    TwinTransfer a = twin_transfer(m, s, 1e-9);
    EXPECT_LT(a.violation, 1e-9);
    EinsteinReport back = extract_einstein_constant(m.twin().twin(), s, 1e-9);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LT(diff(back.points[i].lambda, a.original.points[i].lambda), 1e-12);
  }
}
