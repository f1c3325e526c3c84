#include <gtest/gtest.h>

#include "pmi/certify.hpp"
#include "pmi/errors.hpp"
#include "synthetic.hpp"

using namespace pmi;

namespace {

Polynomial X(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial K(std::size_t n, long c) { return Polynomial::constant(n, c); }
SymPolyMatrix S(const Polynomial& p) { return SymPolyMatrix::scalar(p); }
SymPolyMatrix ball(std::size_t n) { return S(K(n, 1) - squared_norm(n)); }

SymPolyMatrix two_x_x_two() {
  PolyMatrix m(2, 2, 1);
  m(0, 0) = m(1, 1) = K(1, 2);
  m(0, 1) = m(1, 0) = X(1, 0);
  return SymPolyMatrix(m);
}

}  // namespace

TEST(Facet, CertificatesVerifyExactly) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i < n; ++i) {
      QMCertificate c = facet_certificate(FacetKind::kLower, i, n);
      VerifyReport r = verify_certificate(S(facet_polynomial(FacetKind::kLower, i, n)), ball(n), c, CertMode::kExact);
      EXPECT_TRUE(r.ok) << n << " " << i;
      EXPECT_EQ(r.residual_norm, 0.0);
    }
    QMCertificate u = facet_certificate(FacetKind::kUpperSum, 0, n);
    EXPECT_TRUE(verify_certificate(S(facet_polynomial(FacetKind::kUpperSum, 0, n)), ball(n), u, CertMode::kExact).ok);
  }
}

TEST(Facet, OneDimensionalForms) {
  Polynomial x = X(1, 0);
  EXPECT_EQ(facet_polynomial(FacetKind::kLower, 0, 1), K(1, 1) + x);
  EXPECT_EQ(facet_polynomial(FacetKind::kUpperSum, 0, 1), K(1, 1) - x);
  EXPECT_EQ(facet_polynomial(FacetKind::kUpperSum, 0, 2), Polynomial::parse("sqrt(2) - x1 - x2", 2));
}

TEST(Assemble, IdentityNeedsNoMultipliers) {
  auto w = trivial_ball_witness(ball(2));
  ASSERT_TRUE(w);
  AssembleResult r = assemble_simplex_putinar(SymPolyMatrix::identity(2, 2), ball(2), *w);
  EXPECT_EQ(r.polya_degree, 0u);
  EXPECT_TRUE(r.certificate.multipliers.empty());
  EXPECT_TRUE(verify_certificate(SymPolyMatrix::identity(2, 2), ball(2), r.certificate, CertMode::kExact).ok);
}

TEST(Assemble, ScalarAffine) {
  SymPolyMatrix f = S(K(1, 2) + X(1, 0));
  AssembleResult r = assemble_simplex_putinar(f, ball(1), *trivial_ball_witness(ball(1)));
  EXPECT_EQ(r.polya_degree, 1u);
  VerifyReport v = verify_certificate(f, ball(1), r.certificate, CertMode::kExact);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.residual_norm, 0.0);
  EXPECT_LE(v.term_degree, 2u);
}

TEST(Assemble, MatrixAffine) {
  AssembleResult r = assemble_simplex_putinar(two_x_x_two(), ball(1), *trivial_ball_witness(ball(1)));
  VerifyReport v = verify_certificate(two_x_x_two(), ball(1), r.certificate, CertMode::kExact);
  EXPECT_TRUE(v.ok);
  EXPECT_LE(r.degree, 4u);
}

TEST(Assemble, MatrixConstraintWithBallOnDiagonal) {
  std::size_t n = 2;
  SymPolyMatrix g = SymPolyMatrix::diagonal({K(n, 1) - squared_norm(n), K(n, 1) + X(n, 0)});
  SymPolyMatrix f = S(K(n, 3) + X(n, 0) * X(n, 1));
  AssembleResult r = assemble_simplex_putinar(f, g, *trivial_ball_witness(g));
  EXPECT_TRUE(verify_certificate(f, g, r.certificate, CertMode::kExact).ok);
}

TEST(Assemble, RejectsBadWitness) {
  QMCertificate w = *trivial_ball_witness(ball(1));
  w.multipliers.front().weight = 2;
  EXPECT_THROW(assemble_simplex_putinar(S(K(1, 1)), ball(1), w), InputError);
}

TEST(Verify, TamperedGramRejected) {
  QMCertificate c = facet_certificate(FacetKind::kLower, 0, 1);
  c.sos.front().gram(0, 0) = -c.sos.front().gram(0, 0);
  VerifyReport r = verify_certificate(S(K(1, 1) + X(1, 0)), ball(1), c, CertMode::kExact);
  EXPECT_FALSE(r.ok);
  bool named = false;
  for (const auto& f : r.failures) named |= f.find("sos block 1") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Verify, RandomValidAndTampered) {
  std::mt19937 rng(191);
  for (int i = 0; i < 20; ++i) {
    auto rc = testkit::random_certificate(rng, 1 + i % 2, 1 + i % 2, 1 + i % 3);
    EXPECT_TRUE(verify_certificate(rc.f, rc.g, rc.cert, CertMode::kExact).ok);
    EXPECT_TRUE(verify_certificate(rc.f, rc.g, rc.cert, CertMode::kNumeric).ok);
    QMCertificate bad = rc.cert;
    testkit::tamper(rng, bad);
    EXPECT_FALSE(verify_certificate(rc.f, rc.g, bad, CertMode::kExact).ok);
  }
}

TEST(Verify, IdealTermsNeedDeclaredEquality) {
  std::size_t n = 1;
  Polynomial gen = X(n, 0) * X(n, 0) - K(n, 1);
  QMCertificate c;
  c.nvars = n;
  c.degree = 2;
  c.ideal.push_back({gen, S(K(n, 1))});
  EXPECT_FALSE(verify_certificate(S(gen), S(K(n, 1)), c, CertMode::kExact).ok);
  EXPECT_TRUE(verify_certificate(S(gen), S(K(n, 1)), c, CertMode::kExact, 1e-6, {gen}).ok);
}

TEST(Verify, DegreeLimitEnforced) {
  QMCertificate c = facet_certificate(FacetKind::kLower, 0, 1);
  c.degree = 1;
  EXPECT_FALSE(verify_certificate(S(K(1, 1) + X(1, 0)), ball(1), c, CertMode::kExact).ok);
}

TEST(Serialize, RoundTrips) {
  std::vector<QMCertificate> certs = {facet_certificate(FacetKind::kUpperSum, 0, 2),
                                      assemble_simplex_putinar(two_x_x_two(), ball(1), *trivial_ball_witness(ball(1)))
                                          .certificate};
  std::mt19937 rng(193);
  certs.push_back(testkit::random_certificate(rng, 2, 2, 2).cert);
  certs.push_back(testkit::synthetic_sphere_instance(rng, 1, 2).cert);
  for (const auto& c : certs) {
    std::string text = serialize(c);
    QMCertificate back = deserialize(text);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Serialize, TruncatedInputNamesSection) {
  std::string text = serialize(facet_certificate(FacetKind::kLower, 0, 1));
  std::string cut = text.substr(0, text.find("multipliers"));
  try {
    deserialize(cut);
    FAIL() << "expected a parse error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("multipliers"), std::string::npos) << e.what();
  }
  EXPECT_THROW(deserialize("qmcert 2\n"), InputError);
}
