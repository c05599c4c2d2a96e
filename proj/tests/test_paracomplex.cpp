#include <gtest/gtest.h>

#include "support.hpp"

using namespace paraholo;
using testing_support::random_pc;

TEST(ParaComplex, UnitSquaresToOne) {
  EXPECT_EQ(ParaComplex(0, 1) * ParaComplex(0, 1), ParaComplex(1, 0));
}

TEST(ParaComplex, NullElementsMultiplyToZero) {
  EXPECT_EQ(ParaComplex(1, 1) * ParaComplex(1, -1), ParaComplex(0, 0));
  EXPECT_EQ(ParaComplex(2, 1) * ParaComplex(2, -1), ParaComplex(3, 0));
}

TEST(ParaComplex, Conjugation) {
  EXPECT_EQ(conj(ParaComplex(3, 2)), ParaComplex(3, -2));
  EXPECT_EQ(conj(ParaComplex(5, 0)), ParaComplex(5, 0));
  EXPECT_EQ(conj(conj(ParaComplex(1, 7))), ParaComplex(1, 7));
}

TEST(ParaComplex, Inverse) {
  ParaComplex w = invert(ParaComplex(2, 1));
  EXPECT_NEAR(w.re, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(w.im, -1.0 / 3.0, 1e-15);
  EXPECT_EQ(invert(ParaComplex(1, 0)), ParaComplex(1, 0));
  EXPECT_THROW(invert(ParaComplex(1, 1)), ZeroDivisor);
  EXPECT_THROW(invert(ParaComplex(0, 0)), ZeroDivisor);
}

TEST(ParaComplex, InverseThresholdIsConfigurable) {
  EXPECT_NO_THROW(invert(ParaComplex(1e-4, 0), 1e-12));
  EXPECT_THROW(invert(ParaComplex(1e-4, 0), 1e-6), ZeroDivisor);
}

TEST(ParaComplex, Split) {
  EXPECT_EQ(split(ParaComplex(3, 1)), std::make_pair(4.0, 2.0));
  EXPECT_EQ(split(ParaComplex(0, 1)), std::make_pair(1.0, -1.0));
  auto [p, q] = split(ParaComplex(1, 2) * ParaComplex(3, 1));
  EXPECT_EQ(ParaComplex(1, 2) * ParaComplex(3, 1), ParaComplex(5, 7));
  EXPECT_EQ(p, 3.0 * 4.0);
  EXPECT_EQ(q, -1.0 * 2.0);
}

TEST(ParaComplex, ExpAgreesWithSeries) {
  ParaComplex z(0.4, -0.7);
  ParaComplex term(1, 0), sum(0, 0);
  for (int k = 1; k < 40; ++k) {
    sum += term;
    term = term * z * (1.0 / k);
  }
  EXPECT_LT(abs_max(exp(z) - sum), 1e-14);
}

TEST(ParaComplexProperty, RingLaws) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    ParaComplex a = random_pc(rng), b = random_pc(rng), c = random_pc(rng);
    ASSERT_EQ(a * b, b * a);
    ASSERT_LT(abs_max((a * b) * c - a * (b * c)), 1e-12);
    ASSERT_NEAR(modulus(a * b), modulus(a) * modulus(b), 1e-12 * (1.0 + std::abs(modulus(a) * modulus(b))));
    ASSERT_EQ(conj(a * b), conj(a) * conj(b));
    ASSERT_EQ(conj(a + b), conj(a) + conj(b));
    auto [ap, am] = split(a);
    auto [bp, bm] = split(b);
    auto [cp, cm] = split(a * b);
    ASSERT_NEAR(cp, ap * bp, 1e-12);
    ASSERT_NEAR(cm, am * bm, 1e-12);
    // (re+im) and (re-im) are rounded once each, so the round trip is exact up to an ulp.
    ASSERT_LT(abs_max(unsplit(ap, am) - a), 4 * std::numeric_limits<double>::epsilon() * (1.0 + abs_max(a)));
  }
}

TEST(PCMatrix, DiagonalAndIdentity) {
  PCMatrix m(2, 2);
  m(0, 0) = {2, 0};
  m(1, 1) = {3, 0};
  PCMatrix inv = matrix_inverse_pc(m);
  EXPECT_NEAR(inv(0, 0).re, 0.5, 1e-15);
  EXPECT_NEAR(inv(1, 1).re, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(inv(0, 1), ParaComplex());
  EXPECT_EQ(matrix_inverse_pc(pc_identity(3)), pc_identity(3));
}

TEST(PCMatrix, NullEntryIsSingularOnMinusProjection) {
  PCMatrix m(1, 1);
  m(0, 0) = {1, 1};
  try {
    matrix_inverse_pc(m);
    FAIL();
  } catch (const SingularProjection& e) {
    EXPECT_EQ(e.which(), Projection::minus);
  }
  m(0, 0) = {1, -1};
  try {
    matrix_inverse_pc(m);
    FAIL();
  } catch (const SingularProjection& e) {
    EXPECT_EQ(e.which(), Projection::plus);
  }
}

TEST(PCMatrixProperty, InverseAgreesWithSplitRepresentation) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 4;
    PCMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = random_pc(rng);
    for (int i = 0; i < n; ++i) m(i, i) += ParaComplex(3.0 * n, 0.5);
    PCMatrix inv = matrix_inverse_pc(m);
    // M M^-1 = 1
    EXPECT_LT(max_abs(m * inv - pc_identity(n)), 1e-12);
    // Independent route: invert each null-basis projection by Gauss-Jordan elimination.
    auto gauss = [n](Eigen::MatrixXd a) {
      Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
      for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
          if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        a.row(c).swap(a.row(piv));
        b.row(c).swap(b.row(piv));
        double d = a(c, c);
        a.row(c) /= d;
        b.row(c) /= d;
        for (int r = 0; r < n; ++r)
          if (r != c) {
            double f = a(r, c);
            a.row(r) -= f * a.row(c);
            b.row(r) -= f * b.row(c);
          }
      }
      return b;
    };
    Eigen::MatrixXd p(n, n), q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) std::tie(p(i, j), q(i, j)) = split(m(i, j));
    PCMatrix ref = unsplit(gauss(p), gauss(q));
    EXPECT_LT(max_diff(inv.data(), ref.data()), 1e-10);
  }
}
