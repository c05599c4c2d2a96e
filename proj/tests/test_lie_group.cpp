#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace paraholo;
using testing_support::diff;

namespace {

LieAlgebraData sl2() { return validate_structure(3, sl2_table()); }

LieAlgebraData abelian(int m) { return validate_structure(m, std::vector<ParaComplex>(std::size_t(m) * m * m)); }

std::vector<ParaComplex> so3_table() {
  std::vector<ParaComplex> C(27);
  auto set = [&](int a, int b, int c) {
    C[(a * 3 + b) * 3 + c] = {1, 0};
    C[(a * 3 + c) * 3 + b] = {-1, 0};
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return C;
}

// Killing form as tr(ad_a ad_b) with explicit ad matrices.
PCMatrix killing_oracle(int m, const std::vector<ParaComplex>& C) {
  std::vector<PCMatrix> ad(m, PCMatrix(m, m));
  for (int a = 0; a < m; ++a)
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) ad[a](r, s) = C[(r * m + a) * m + s];
  PCMatrix k(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      PCMatrix p = ad[a] * ad[b];
      for (int i = 0; i < m; ++i) k(a, b) += p(i, i);
    }
  return k;
}

PCMatrix random_invertible(std::mt19937_64& rng, int m, double shift = 2.0) {
  PCMatrix M(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) M(a, b) = testing_support::random_pc(rng, -0.5, 0.5);
  for (int a = 0; a < m; ++a) M(a, a) += ParaComplex(shift, 0.3);
  return M;
}

// Structure constants in a random basis: C'^a_bc = P^-1^a_d C^d_ef P^e_b P^f_c.
std::vector<ParaComplex> change_basis(std::mt19937_64& rng, int m, const std::vector<ParaComplex>& C) {
  PCMatrix P = random_invertible(rng, m), Pi = matrix_inverse_pc(P);
  std::vector<ParaComplex> out(C.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        ParaComplex acc;
        for (int d = 0; d < m; ++d)
          for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f) acc += Pi(a, d) * C[(d * m + e) * m + f] * P(e, b) * P(f, c);
        out[(a * m + b) * m + c] = acc;
        out[(a * m + c) * m + b] = -acc;
      }
  return out;
}

EvalPoint origin(int m) { return EvalPoint(std::vector<ParaComplex>(m)); }

double max_diff4(const Tensor4<ParaComplex>& a, const Tensor4<ParaComplex>& b) { return max_diff(a.data(), b.data()); }

}  // namespace

TEST(Structure, Sl2) {
  LieAlgebraData L = sl2();
  EXPECT_TRUE(L.semisimple);
  PCMatrix k = killing_oracle(3, L.C);
  EXPECT_EQ(L.killing, k);
  EXPECT_EQ(k(0, 0), ParaComplex(8, 0));
  EXPECT_EQ(k(1, 2), ParaComplex(4, 0));
  EXPECT_EQ(k(2, 1), ParaComplex(4, 0));
  EXPECT_EQ(k(0, 1), ParaComplex());
  EXPECT_EQ(k(1, 1), ParaComplex());
  Eigen::MatrixXd re = to_eigen(Matrix<double>(3, 3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) re(a, b) = k(a, b).re;
  EXPECT_NEAR(re.determinant(), -128.0, 1e-12);
}

TEST(Structure, AbelianAndErrors) {
  LieAlgebraData A = abelian(3);
  EXPECT_FALSE(A.semisimple);
  EXPECT_EQ(max_abs(A.killing), 0.0);

  std::vector<StructureEntry> bad = {{0, 1, 2, {1, 0}}, {0, 2, 1, {1, 0}}};
  try {
    validate_structure(3, std::span<const StructureEntry>(bad));
    FAIL();
  } catch (const NotAntisymmetric& e) {
    EXPECT_EQ(e.a(), 0);
    EXPECT_EQ(e.b(), 1);
    EXPECT_EQ(e.c(), 2);
  }

  // [e1,e2] = e1, [e2,e3] = e1, [e3,e1] = e2 is antisymmetric but the Jacobi sum is e2.
  std::vector<StructureEntry> nj = {{0, 0, 1, {1, 0}}, {0, 1, 0, {-1, 0}}, {0, 1, 2, {1, 0}},
                                    {0, 2, 1, {-1, 0}}, {1, 2, 0, {1, 0}}, {1, 0, 2, {-1, 0}}};
  EXPECT_THROW(validate_structure(3, std::span<const StructureEntry>(nj)), JacobiViolation);

  std::vector<StructureEntry> out_of_range = {{3, 0, 1, {1, 0}}};
  EXPECT_THROW(validate_structure(3, std::span<const StructureEntry>(out_of_range)), IndexOutOfRange);
}

TEST(StructureProperty, RandomBasesStayValid) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const bool big = t % 2 == 1;
    const int m = big ? 6 : 3;
    auto base = big ? direct_sum(3, sl2_table(), 3, so3_table()) : sl2_table();
    LieAlgebraData L = validate_structure(m, change_basis(rng, m, base), 1e-10);
    EXPECT_TRUE(L.semisimple);
    EXPECT_LT(max_diff(L.killing.data(), L.killing.transposed().data()), 1e-10);
    EXPECT_LT(max_diff(L.killing.data(), killing_oracle(m, L.C).data()), 1e-10);
  }
}

TEST(InvariantMetric, Examples) {
  LieAlgebraData L = sl2();
  EXPECT_EQ(lie_metric_at(L, identity_frame(3), origin(3)), L.killing);
  ParaMetric g = invariant_metric(L, bch_lambda_series(L, 6));
  EXPECT_LT(max_diff(g.at(origin(3)).data(), L.killing.data()), 1e-15);

  LieAlgebraData A = abelian(2);
  EXPECT_THROW(invariant_metric(A, identity_frame(2)), NotSemisimple);
  ExprMatrix zero = invariant_metric_exprs(A, identity_frame(2));
  for (const auto& e : zero.data()) EXPECT_TRUE(e.is_zero());

  std::mt19937_64 rng(52);
  PCMatrix M = random_invertible(rng, 3);
  PCMatrix want(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) want(a, b) += M(p, a) * L.killing(p, q) * M(q, b);
  LambdaFrame f = constant_frame(M);
  EXPECT_LT(max_diff(lie_metric_at(L, f, origin(3)).data(), want.data()), 1e-12);
  EXPECT_LT(max_diff(invariant_metric(L, f).at(origin(3)).data(), want.data()), 1e-12);
}

TEST(MaurerCartan, ConstantFrames) {
  auto pts = probe_points(3, 0.1, 3);
  EXPECT_EQ(mc_check(abelian(3), identity_frame(3), pts, 1e-12).residual, 0.0);
  McReport r = mc_check(sl2(), identity_frame(3), pts, 1e-12);
  EXPECT_EQ(r.residual, 2.0);
  EXPECT_FALSE(r.pass);
  // The expression path agrees with the collected polynomial path.
  LieAlgebraData L = sl2();
  LambdaFrame f = bch_lambda_series(L, 4);
  LambdaFrame plain = make_frame(3, f.lambda);
  for (const auto& p : probe_points(3, 0.2, 3))
    EXPECT_NEAR(mc_residual_at(L, plain, p), mc_check(L, f, std::vector<EvalPoint>{p}, 1.0).residual, 1e-12);
}

TEST(MaurerCartan, SeriesFrames) {
  LieAlgebraData L = sl2();
  LambdaFrame f0 = bch_lambda_series(L, 0);
  EXPECT_EQ(f0.order, 0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(f0.lambda(a, b), Expression(a == b ? 1.0 : 0.0));

  LambdaFrame fa = bch_lambda_series(abelian(3), 5);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(fa.lambda(a, b), Expression(a == b ? 1.0 : 0.0));

  LambdaFrame f6 = bch_lambda_series(L, 6);
  EXPECT_EQ(f6.sign, 1);
  EXPECT_LT(mc_check(L, f6, probe_points(3, 1e-2, 4), 1e-9).residual, 1e-9);

  // lambda(0) = identity for every order.
  for (int N = 0; N < 7; ++N)
    EXPECT_EQ(lie_metric_at(L, bch_lambda_series(L, N), origin(3)), L.killing);
}

TEST(MaurerCartan, ResidualScaling) {
  LieAlgebraData L = sl2();
  for (int N : {2, 4, 6}) {
    LambdaFrame f = bch_lambda_series(L, N);
    std::vector<double> res;
    for (double r : {1e-1, 1e-2, 1e-3}) res.push_back(mc_check(L, f, probe_points(3, r, 3), 1.0).residual);
    for (int i = 0; i + 1 < 3; ++i) EXPECT_NEAR(std::log10(res[i] / res[i + 1]), N - 1, 0.5) << "N=" << N;
  }
  // With the opposite sign the residual at the identity is 2 C and does not shrink.
  LambdaFrame wrong = series_frame(L, 6, -1);
  EXPECT_NEAR(mc_check(L, wrong, probe_points(3, 1e-3), 1.0).residual, 4.0, 1e-2);
}

TEST(MaurerCartan, InconsistentConstantsHaveNoSign) {
  // A table that bypasses validation: no series sign can satisfy the residual to high order.
  LieAlgebraData L = sl2();
  L.C[(0 * 3 + 1) * 3 + 2] = {3, 0};
  L.C[(0 * 3 + 2) * 3 + 1] = {-3, 0};
  L.C[(1 * 3 + 1) * 3 + 2] = {1, 0};
  L.C[(1 * 3 + 2) * 3 + 1] = {-1, 0};
  EXPECT_THROW(bch_lambda_series(L, 6), NoSignWorks);
}

TEST(Connection, Examples) {
  EXPECT_EQ(max_abs(lie_connection(identity_frame(3), probe_points(3, 0.1)[0]).data()), 0.0);
  LieAlgebraData L = sl2();
  LambdaFrame f = bch_lambda_series(L, 6);
  EXPECT_LT(max_abs(lie_connection(f, origin(3)).data()), 1e-15);
  for (const auto& p : probe_points(3, 1e-2, 5)) {
    auto a = lie_connection(f, p), b = lie_connection_first_form(L, f, p);
    EXPECT_LT(max_diff(a.data(), b.data()), 1e-8);
  }
  // Away from a valid frame the two forms differ.
  auto p = probe_points(3, 0.1)[0];
  EXPECT_GT(max_diff(lie_connection(identity_frame(3), p).data(), lie_connection_first_form(L, identity_frame(3), p).data()),
            0.1);
}

TEST(Curvature, ClosedFormAtIdentity) {
  LieAlgebraData L = sl2();
  EXPECT_EQ(max_abs(lie_curvature(abelian(3), identity_frame(3), origin(3)).data()), 0.0);
  Tensor4<ParaComplex> R = lie_curvature(L, identity_frame(3), origin(3));
  for (int d = 0; d < 3; ++d)
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          ParaComplex want;
          for (int q = 0; q < 3; ++q) want += L(d, c, q) * L(q, a, b) * -0.25;
          EXPECT_EQ(R(d, c, a, b), want);
        }
}

TEST(Curvature, ConstantFramesConjugate) {
  LieAlgebraData L = sl2();
  Tensor4<ParaComplex> R0 = lie_curvature(L, identity_frame(3), origin(3));
  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    PCMatrix M = random_invertible(rng, 3), Mi = matrix_inverse_pc(M);
    Tensor4<ParaComplex> R = lie_curvature(L, constant_frame(M), origin(3));
    Tensor4<ParaComplex> want(3);
    for (int d = 0; d < 3; ++d)
      for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int f = 0; f < 3; ++f)
              for (int p = 0; p < 3; ++p)
                for (int r = 0; r < 3; ++r)
                  for (int s = 0; s < 3; ++s) want(d, c, a, b) += Mi(d, f) * R0(f, p, r, s) * M(p, c) * M(r, a) * M(s, b);
    EXPECT_LT(max_diff4(R, want), 1e-11);
  }
}

TEST(Curvature, EngineOnLieConnectionIsMinusClosedForm) {
  LieAlgebraData L = sl2();
  LambdaFrame f = bch_lambda_series(L, 6);
  LieConnectionField field{f};
  for (const auto& p : probe_points(3, 1e-2, 3)) {
    Tensor4<ParaComplex> eng = curvature_at(field, p.slots());
    Tensor4<ParaComplex> closed = lie_curvature(L, f, p);
    double v = 0.0;
    for (int d = 0; d < 3; ++d)
      for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) v = std::max(v, diff(eng(d, c, a, b), -closed(d, c, a, b)));
    EXPECT_LT(v, 1e-8);
  }
}

TEST(Ricci, Sl2AtIdentity) {
  LieAlgebraData L = sl2();
  LieEinsteinReport r = lie_ricci_and_einstein(L, identity_frame(3), origin(3));
  PCMatrix want(3, 3);
  want(0, 0) = {-2, 0};
  want(1, 2) = want(2, 1) = {-1, 0};
  EXPECT_LT(max_diff(r.ricci.data(), want.data()), 1e-12);
  PCMatrix k = killing_oracle(3, L.C);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_LT(diff(r.ricci(a, b), k(a, b) * -0.25), 1e-12);
  EXPECT_LT(diff(r.scalar, ParaComplex(-0.75, 0)), 1e-12);
  EXPECT_LT(diff(r.einstein_constant, ParaComplex(-0.25, 0)), 1e-12);
  EXPECT_THROW(lie_ricci_and_einstein(abelian(3), identity_frame(3), origin(3)), NotSemisimple);
}

TEST(Ricci, ScalarIsMinusQuarterDimension) {
  LieAlgebraData L6 = validate_structure(6, direct_sum(3, sl2_table(), 3, sl2_table()));
  EXPECT_LT(diff(lie_ricci_and_einstein(L6, identity_frame(6), origin(6)).scalar, ParaComplex(-1.5, 0)), 1e-12);
  LieAlgebraData Lso = validate_structure(6, direct_sum(3, sl2_table(), 3, so3_table()));
  EXPECT_LT(diff(lie_ricci_and_einstein(Lso, bch_lambda_series(Lso, 3), probe_points(6, 0.1)[0]).scalar,
                 ParaComplex(-1.5, 0)),
            1e-12);
}

TEST(RicciProperty, EinsteinIdentityForRandomFrames) {
  std::mt19937_64 rng(54);
  LieAlgebraData L = sl2();
  for (int t = 0; t < 100; ++t) {
    LieEinsteinReport r = lie_ricci_and_einstein(L, constant_frame(random_invertible(rng, 3)), origin(3));
    ASSERT_LT(r.residual, 1e-11);
    ASSERT_LT(diff(r.scalar, ParaComplex(-0.75, 0)), 1e-11);
  }
  for (int t = 0; t < 20; ++t) {
    LieAlgebraData R = validate_structure(3, change_basis(rng, 3, sl2_table()), 1e-10);
    LieEinsteinReport r = lie_ricci_and_einstein(R, constant_frame(random_invertible(rng, 3)), origin(3));
    ASSERT_LT(r.residual, 1e-12 * (1.0 + max_abs(r.g)));
  }
}

TEST(Lowered, ClosedFormMatchesComposition) {
  std::mt19937_64 rng(55);
  LieAlgebraData L = sl2();
  for (const LambdaFrame& f : {identity_frame(3), constant_frame(random_invertible(rng, 3)), bch_lambda_series(L, 6)}) {
    EvalPoint p = probe_points(3, 1e-2)[0];
    auto a = lie_lowered_curvature(L, f, p), b = lie_lowered_composed(L, f, p);
    EXPECT_LT(max_diff4(a, b), 1e-11);
  }
}

TEST(Sectional, Values) {
  LieAlgebraData L = sl2();
  LambdaFrame id = identity_frame(3);
  std::vector<ParaComplex> e2 = {{0, 0}, {1, 0}, {0, 0}}, e3 = {{0, 0}, {0, 0}, {1, 0}};
  // Full index summation with lambda = identity.
  PCMatrix k = L.killing;
  ParaComplex num, den;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          ParaComplex w = e2[a] * e2[c] * e3[b] * e3[d];
          ParaComplex r;
          for (int f = 0; f < 3; ++f)
            for (int q = 0; q < 3; ++q) r += k(b, f) * L(f, a, q) * L(q, c, d) * -0.25;
          num += r * w;
          den += (k(a, c) * k(b, d) - k(a, d) * k(b, c)) * w;
        }
  ParaComplex want = num * invert(den);
  ParaComplex got = lie_sectional(L, id, e2, e3, origin(3));
  EXPECT_LT(diff(got, want), 1e-15);
  EXPECT_LT(diff(got, ParaComplex(-0.125, 0)), 1e-15);
  EXPECT_THROW(lie_sectional(L, id, e2, e2, origin(3)), DegeneratePlane);
  EXPECT_THROW(lie_sectional(abelian(3), id, e2, e3, origin(3)), NotSemisimple);

  // Against the generic engine: k = -K of the characteristic sectional curvature.
  CurvatureData cd = curvature_data(invariant_metric(L, bch_lambda_series(L, 6)), origin(3));
  EXPECT_LT(diff(sectional_curvature(cd, e2, e3), -got), 1e-10);
}

TEST(Sectional, ConstantOnRightInvariantFields) {
  LieAlgebraData L = sl2();
  LambdaFrame f = bch_lambda_series(L, 6);
  auto pts = probe_points(3, 1e-2, 5);
  // Constant combinations of the columns of the inverse frame are right-invariant.
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
      {{0, 1, 0}, {0, 0, 1}}, {{1, 1, 0}, {0, 0.5, 1}}, {{1, 0.3, -0.2}, {0.4, -1, 2}}};
  for (const auto& [alpha, beta] : pairs) {
    auto field = [&](const std::vector<double>& w, const EvalPoint& p) {
      std::vector<ParaComplex> out(3);
      for (int i = 0; i < 3; ++i) {
        auto col = right_invariant_field(f, i, p);
        for (int a = 0; a < 3; ++a) out[a] += col[a] * w[i];
      }
      return out;
    };
    std::vector<ParaComplex> ks;
    for (const auto& p : pts) ks.push_back(lie_sectional(L, f, field(alpha, p), field(beta, p), p));
    for (const auto& k : ks) EXPECT_LT(diff(k, ks.front()), 1e-6);
  }
}

TEST(Parallel, CurvatureIsParallel) {
  LieAlgebraData L = sl2();
  EXPECT_EQ(parallel_curvature_check(abelian(3), identity_frame(3), probe_points(3, 0.1)), 0.0);
  LambdaFrame f = bch_lambda_series(L, 6);
  std::vector<EvalPoint> at_identity = {origin(3)};
  EXPECT_LT(parallel_curvature_check(L, f, at_identity), 1e-9);
  EXPECT_LT(parallel_curvature_check(L, f, probe_points(3, 1e-2, 4)), 1e-6);
  // A generic frame is not Maurer-Cartan and its curvature is not parallel.
  PolyMatrix bent = poly_identity(3);
  bent(0, 1) += Polynomial::variable(3, 2) * Polynomial::variable(3, 2);
  bent(2, 0) += Polynomial::variable(3, 1) * ParaComplex(0.5, 0.2);
  EXPECT_GT(parallel_curvature_check(L, make_frame(3, bent), probe_points(3, 0.1)), 1e-3);
}

TEST(Realization, Sl2) {
  LieAlgebraData L = sl2();
  LambdaFrame f = bch_lambda_series(L, 6);
  RealizedMetric rm = para_kahler_norden_realization(L, f);
  Eigen::MatrixXd g = realized_at(rm, origin(3));
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(6, 6);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) want(a, b) = want(3 + a, 3 + b) = 2.0 * L.killing(a, b).re;
  EXPECT_LT((g - want).cwiseAbs().maxCoeff(), 1e-15);
  RealGeometry geo = real_geometry(rm, origin(3));
  EXPECT_LT((geo.ricci + 0.25 * geo.g).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(para_kahler_norden_realization(abelian(3), identity_frame(3)), NotSemisimple);
}

TEST(SplitConsistency, ProjectionsRecombine) {
  std::mt19937_64 rng(56);
  auto plus = sl2_table(), minus = so3_table();
  LieAlgebraData Lp = validate_structure(3, plus), Lm = validate_structure(3, minus);
  LieAlgebraData L = validate_structure(3, split_combine(plus, minus));
  for (int t = 0; t < 5; ++t) {
    PCMatrix Mp(3, 3), Mm(3, 3), M(3, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double x = std::uniform_real_distribution<double>(-0.5, 0.5)(rng) + (a == b ? 2.0 : 0.0);
        double y = std::uniform_real_distribution<double>(-0.5, 0.5)(rng) + (a == b ? 1.5 : 0.0);
        Mp(a, b) = {x, 0};
        Mm(a, b) = {y, 0};
        M(a, b) = unsplit(x, y);
      }
    auto rp = lie_ricci_and_einstein(Lp, constant_frame(Mp), origin(3));
    auto rm = lie_ricci_and_einstein(Lm, constant_frame(Mm), origin(3));
    auto r = lie_ricci_and_einstein(L, constant_frame(M), origin(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        EXPECT_LT(diff(r.ricci(a, b), unsplit(rp.ricci(a, b).re, rm.ricci(a, b).re)), 1e-10);
        EXPECT_LT(diff(r.g(a, b), unsplit(rp.g(a, b).re, rm.g(a, b).re)), 1e-10);
        EXPECT_LT(diff(L.killing(a, b), unsplit(Lp.killing(a, b).re, Lm.killing(a, b).re)), 1e-10);
      }
    EXPECT_LT(diff(r.scalar, unsplit(rp.scalar.re, rm.scalar.re)), 1e-10);
    auto Rp = lie_curvature(Lp, constant_frame(Mp), origin(3));
    auto Rm = lie_curvature(Lm, constant_frame(Mm), origin(3));
    auto R = lie_curvature(L, constant_frame(M), origin(3));
    for (std::size_t i = 0; i < R.data().size(); ++i)
      EXPECT_LT(diff(R.data()[i], unsplit(Rp.data()[i].re, Rm.data()[i].re)), 1e-10);
  }
}

TEST(Polynomial, Arithmetic) {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial p = (x + y) * (x - y);
  EXPECT_EQ(p.terms().size(), 2u);
  EXPECT_EQ(p.degree(), 2);
  std::vector<ParaComplex> at = {{0.3, 0.2}, {-0.1, 0.4}};
  EXPECT_LT(diff(p.evaluate(at), at[0] * at[0] - at[1] * at[1]), 1e-15);
  EXPECT_LT(diff(p.derivative(0).evaluate(at), at[0] * 2.0), 1e-15);
  Polynomial q = p + Polynomial::constant(2, {1e-14, 0});
  EXPECT_EQ(q.chopped(1e-12).terms().size(), 2u);
  EvalPoint ep(at);
  EXPECT_LT(diff(eval_expr(p.to_expression(), ep), p.evaluate(at)), 1e-15);
  EXPECT_TRUE((x - x).is_zero());
}
