#include <gtest/gtest.h>

#include "pmi/errors.hpp"
#include "pmi/scalarize.hpp"
#include "support.hpp"

using namespace pmi;

namespace {

Polynomial K(std::size_t n, long c) { return Polynomial::constant(n, c); }

SymPolyMatrix one_x_x_one() {
  PolyMatrix m(2, 2, 1);
  m(0, 0) = m(1, 1) = K(1, 1);
  m(0, 1) = m(1, 0) = Polynomial::variable(1, 0);
  return SymPolyMatrix(m);
}

std::vector<ExtRational> values(const ScalarizedSystem& s, const std::vector<ExtRational>& pt) {
  std::vector<ExtRational> v;
  for (const auto& e : s.entries) v.push_back(e.d.evaluate(pt));
  return v;
}

}  // namespace

TEST(ScalarizeBase2, DiagonalMatrix) {
  std::mt19937 rng(101);
  Polynomial g1 = testkit::random_poly(rng, 2, 2), g2 = testkit::random_poly(rng, 2, 2);
  ScalarizedSystem s = scalarize_base2(SymPolyMatrix::diagonal({g1, g2}));
  ASSERT_EQ(s.entries.size(), 6u);
  std::vector<Polynomial> expect = {g1, g2, g1 * g1 * g2, g1 + g2, g1 * g2 * g2, (g1 + g2) * g1 * g2};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(s.entries[i].d, expect[i]) << "entry " << i;
}

TEST(ScalarizeBase2, ConstantMatrixValues) {
  PolyMatrix m(2, 2, 1);
  m(0, 0) = m(1, 1) = K(1, 2);
  m(0, 1) = m(1, 0) = K(1, 1);
  ScalarizedSystem s = scalarize_base2(SymPolyMatrix(m));
  std::vector<long> expect = {2, 2, 6, 6, 6, 18};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(s.entries[i].d, K(1, expect[i]));
  EXPECT_EQ(s.entries[0].v, PolyMatrix::unit_column(2, 0, 1));
}

TEST(ReductionStep, TwoByTwo) {
  std::mt19937 rng(103);
  SymPolyMatrix g = testkit::random_sym(rng, 2, 1, 2);
  ReductionStep a = reduction_step(g, 0, 0);
  EXPECT_EQ(a.s, g(0, 0));
  EXPECT_EQ(a.b(0, 0), g(0, 0) * (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1)));
  ReductionStep b = reduction_step(g, 0, 1);
  Polynomial s = g(0, 0) + g(1, 1) + g(0, 1) * ExtRational(2);
  Polynomial beta = g(0, 1) + g(1, 1);
  EXPECT_EQ(b.s, s);
  EXPECT_EQ(b.b(0, 0), s * (s * g(1, 1) - beta * beta));
}

TEST(ReductionStep, CongruenceIdentityOnRandom4x4) {
  std::mt19937 rng(107);
  SymPolyMatrix g = testkit::random_sym(rng, 4, 1, 1);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      ReductionStep st = reduction_step(g, i, j);
      PolyMatrix lhs = st.transform * g.matrix() * st.transform.transpose();
      Polynomial s3 = st.s * st.s * st.s;
      EXPECT_EQ(lhs(0, 0), s3);
      for (std::size_t k = 1; k < 4; ++k) EXPECT_TRUE(lhs(0, k).is_zero());
      for (std::size_t r = 1; r < 4; ++r)
        for (std::size_t c = 1; c < 4; ++c) EXPECT_EQ(lhs(r, c), st.b(r - 1, c - 1));
    }
}

TEST(Scalarize, Counts) {
  std::mt19937 rng(109);
  EXPECT_EQ(scalarize(testkit::random_sym(rng, 2, 1, 1)).entries.size(), 6u);
  EXPECT_EQ(scalarize(testkit::random_sym(rng, 3, 1, 1)).entries.size(), 42u);
  EXPECT_THROW(scalarize(SymPolyMatrix::identity(6, 1)), InputError);
}

TEST(Scalarize, DiagonalTwoByTwoMatchesBase) {
  std::mt19937 rng(113);
  SymPolyMatrix g = SymPolyMatrix::diagonal({testkit::random_poly(rng, 1, 2), testkit::random_poly(rng, 1, 2)});
  ScalarizedSystem a = scalarize(g), b = scalarize_base2(g);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_EQ(a.entries[i].d, b.entries[i].d);
}

TEST(Scalarize, WitnessesAreExact) {
  std::mt19937 rng(127);
  for (int t = 0; t < 3; ++t) {
    SymPolyMatrix g = testkit::random_sym(rng, 3, 2, 1);
    ScalarizedSystem s = scalarize(g);
    for (const auto& e : s.entries) EXPECT_TRUE(verify_witness(e.d, e.v, g));
  }
  Polynomial g11 = one_x_x_one()(0, 0);
  EXPECT_TRUE(verify_witness(g11, PolyMatrix::unit_column(2, 0, 1), one_x_x_one()));
  EXPECT_FALSE(verify_witness(g11 + K(1, 1), PolyMatrix::unit_column(2, 0, 1), one_x_x_one()));
}

TEST(Equivalence, KnownPoints) {
  SymPolyMatrix g = one_x_x_one();
  ScalarizedSystem s = scalarize(g);
  std::vector<std::vector<ExtRational>> pts = {{mpq_class(1, 2)}, {2}, {1}};
  EquivalenceReport r = equivalence_check(g, s, pts);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.points_checked, 3u);
  auto v1 = values(s, {1});
  std::vector<long> expect = {1, 1, 0, 4, 0, 0};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(v1[i], ExtRational(expect[i]));
  EXPECT_EQ(values(s, {2})[4], ExtRational(-3));
}

TEST(Equivalence, RandomMatricesAgree) {
  std::mt19937 rng(131);
  for (int t = 0; t < 10; ++t) {
    SymPolyMatrix g = t % 2 ? testkit::random_gram_like(rng, 2, 1) : testkit::random_sym(rng, 2, 1, 2);
    ScalarizedSystem s = scalarize(g);
    std::vector<std::vector<ExtRational>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(testkit::random_point(rng, 1));
    EXPECT_TRUE(equivalence_check(g, s, pts).ok());
  }
}

TEST(Charpoly, Examples) {
  PolyMatrix m(2, 2, 1);
  m(0, 0) = m(1, 1) = K(1, 2);
  m(0, 1) = m(1, 0) = K(1, 1);
  auto c = charpoly_scalarization(SymPolyMatrix(m));
  EXPECT_EQ(c.coefficients[0], K(1, 4));
  EXPECT_EQ(c.coefficients[1], K(1, 3));
  auto ci = charpoly_scalarization(SymPolyMatrix::identity(2, 1));
  EXPECT_EQ(ci.coefficients[0], K(1, 2));
  EXPECT_EQ(ci.coefficients[1], K(1, 1));
  auto cd = charpoly_scalarization(SymPolyMatrix::diagonal({K(1, 1), K(1, -1)}));
  EXPECT_TRUE(cd.coefficients[0].is_zero());
  EXPECT_EQ(cd.coefficients[1], K(1, -1));
}

TEST(Charpoly, TraceWitness) {
  std::mt19937 rng(137);
  SymPolyMatrix g = testkit::random_sym(rng, 3, 1, 2);
  auto c = charpoly_scalarization(g);
  Polynomial sum(1);
  for (const auto& v : c.trace_witness) sum += congruence(v, g)(0, 0);
  EXPECT_EQ(sum, c.coefficients[0]);
  EXPECT_EQ(c.coefficients[2], determinant(g.matrix()));
}
