#include <gtest/gtest.h>

#include "pmi/errors.hpp"
#include "pmi/exact_matrix.hpp"
#include "pmi/numeric.hpp"
#include "pmi/poly_matrix.hpp"
#include "support.hpp"

using namespace pmi;

namespace {

Polynomial X(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial C(std::size_t n, long c) { return Polynomial::constant(n, c); }

}  // namespace

TEST(ExtRational, SignOfSurds) {
  EXPECT_EQ(ExtRational(mpq_class(3, 2), -1, 2).sign(), 1);   // 1.5 - 1.414
  EXPECT_EQ(ExtRational(mpq_class(7, 5), -1, 2).sign(), -1);  // 1.4 - 1.414
  EXPECT_EQ(ExtRational(0, 1, 4), ExtRational(2));
  EXPECT_TRUE((ExtRational::sqrt_of(2) * ExtRational::sqrt_of(2)) == ExtRational(2));
}

TEST(ExtRational, InverseAndDivision) {
  ExtRational a(1, 1, 5);
  EXPECT_EQ(a * a.inverse(), ExtRational(1));
  EXPECT_THROW(ExtRational(0).inverse(), InputError);
}

TEST(ExtRational, MixedRadicandsRejected) {
  EXPECT_THROW(ExtRational::sqrt_of(2) + ExtRational::sqrt_of(3), RadicandMismatch);
}

TEST(ExtRational, ParseAndTokenRoundTrip) {
  for (const char* s : {"3/4", "-1/2+3/4*sqrt(2)", "-1/2*sqrt(3)", "0", "7"}) {
    ExtRational v = ExtRational::parse(s);
    EXPECT_EQ(v.to_token(), s);
    EXPECT_EQ(ExtRational::parse(v.to_string()), v);
  }
  EXPECT_EQ(ExtRational::parse("1.25"), ExtRational(mpq_class(5, 4)));
  EXPECT_THROW(ExtRational::parse("1/0"), InputError);
  EXPECT_THROW(ExtRational::parse("abc"), InputError);
}

TEST(Polynomial, Arithmetic) {
  Polynomial x = X(1, 0);
  EXPECT_EQ((x + C(1, 1)) * (x - C(1, 1)), x * x - C(1, 1));
  EXPECT_EQ(x + Polynomial(1), x);
  EXPECT_EQ((x * ExtRational(2)) * (x * x * ExtRational(3)), Polynomial::monomial({3}, 6));
}

TEST(Polynomial, Evaluate) {
  Polynomial x = X(1, 0);
  Polynomial p = x * x - C(1, 1);
  EXPECT_EQ(p.evaluate(std::vector<ExtRational>{2}), ExtRational(3));
  EXPECT_EQ((C(1, 1) - x * x).evaluate(std::vector<ExtRational>{mpq_class(1, 2)}), ExtRational(mpq_class(3, 4)));
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    Polynomial q = testkit::random_poly(rng, 3, 3);
    EXPECT_EQ(q.evaluate(std::vector<ExtRational>(3, ExtRational(0))), q.constant_term());
  }
}

TEST(Polynomial, RingIdentitiesOnRandomInputs) {
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    Polynomial a = testkit::random_poly(rng, 2, 3), b = testkit::random_poly(rng, 2, 2),
               c = testkit::random_poly(rng, 2, 2);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - a).is_zero(), true);
    auto pt = testkit::random_point(rng, 2);
    EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
  }
}

TEST(Polynomial, TextRoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    Polynomial p = testkit::random_poly(rng, 3, 3);
    EXPECT_EQ(Polynomial::parse(p.to_string(), 3), p);
    EXPECT_EQ(Polynomial::parse(p.to_string(0), 3, 0), p);
  }
  Polynomial s = Polynomial::parse("sqrt(2) - x1 - x2", 2);
  EXPECT_EQ(s.constant_term(), ExtRational::sqrt_of(2));
  EXPECT_THROW(Polynomial::parse("x3", 2), InputError);
}

TEST(Polynomial, Homogenize) {
  Polynomial x = X(1, 0);
  Polynomial h = (x * x + C(1, 1)).homogenize(2);
  EXPECT_EQ(h, X(2, 1) * X(2, 1) + X(2, 0) * X(2, 0));
  Polynomial q = (x - C(1, 2)) * (x - C(1, 2)) + C(1, 1);
  Polynomial x0 = X(2, 0), x1 = X(2, 1);
  EXPECT_EQ(q.homogenize(2), x1 * x1 - x0 * x1 * ExtRational(4) + x0 * x0 * ExtRational(5));
  EXPECT_EQ(C(1, 7).homogenize(0), C(2, 7));
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    Polynomial p = testkit::random_poly(rng, 2, 3);
    EXPECT_TRUE(p.homogenize(3).is_homogeneous());
    EXPECT_EQ(p.homogenize(3).dehomogenize(), p);
  }
}

TEST(PolyMatrix, Congruence) {
  std::mt19937 rng(17);
  SymPolyMatrix g = testkit::random_sym(rng, 2, 1, 2);
  EXPECT_EQ(congruence(PolyMatrix::unit_column(2, 0, 1), g)(0, 0), g(0, 0));
  EXPECT_EQ(congruence(PolyMatrix::identity(2, 1), g), g);
  PolyMatrix e12 = PolyMatrix::unit_column(2, 0, 1) + PolyMatrix::unit_column(2, 1, 1);
  EXPECT_EQ(congruence(e12, g)(0, 0), g(0, 0) + g(1, 1) + g(0, 1) * ExtRational(2));
}

TEST(PolyMatrix, AsymmetricRejected) {
  PolyMatrix m(2, 2, 1);
  m(0, 1) = X(1, 0);
  EXPECT_THROW(SymPolyMatrix{m}, InputError);
}

TEST(ExactMatrix, PsdExact) {
  auto m = [](std::vector<std::vector<ExtRational>> rows) { return ExtMatrix::from_rows(rows); };
  EXPECT_TRUE(psd_exact(m({{2, 1}, {1, 2}}), true));
  EXPECT_FALSE(psd_exact(m({{1, 2}, {2, 1}}), false));
  EXPECT_TRUE(psd_exact(ExtMatrix(3, 3), false));
  EXPECT_FALSE(psd_exact(ExtMatrix(3, 3), true));
  // leading minors alone would accept this one
  EXPECT_FALSE(psd_exact(m({{0, 0}, {0, -1}}), false));
}

TEST(ExactMatrix, PsdMethodsAgree) {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 2 + i % 4;
    RationalSymMatrix a = i % 2 ? testkit::random_psd(rng, n, 1 + i % n) : testkit::random_rational_sym(rng, n);
    EXPECT_EQ(psd_exact(a, false), psd_ldlt(a, false));
    EXPECT_EQ(psd_exact(a, true), psd_ldlt(a, true));
    if (i % 2) EXPECT_TRUE(psd_ldlt(a, false));
  }
}

TEST(ExactMatrix, LdltReconstructs) {
  std::mt19937 rng(29);
  for (int i = 0; i < 20; ++i) {
    RationalSymMatrix a = testkit::random_psd(rng, 4, 2 + i % 3);
    LdltResult r = ldlt_exact(a);
    ASSERT_TRUE(r.psd);
    ExtMatrix d(4, 4), p(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      d(k, k) = r.diag[k];
      p(k, r.perm[k]) = 1;
    }
    EXPECT_EQ(p * a * p.transpose(), r.lower * d * r.lower.transpose());
  }
}

TEST(ExactMatrix, InverseAndDeterminant) {
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    RationalSymMatrix a = testkit::random_rational_sym(rng, 3);
    if (determinant(a).is_zero()) continue;
    EXPECT_EQ(a * inverse(a), ExtMatrix::identity(3));
  }
}

TEST(Numeric, MinEigenvalue) {
  EXPECT_NEAR(min_eigenvalue_numeric(Eigen::MatrixXd::Identity(3, 3)), 1.0, 1e-12);
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  EXPECT_NEAR(min_eigenvalue_numeric(m), 1.0, 1e-12);
  m << 3, 0, 0, -1;
  EXPECT_NEAR(min_eigenvalue_numeric(m), -1.0, 1e-12);
}
