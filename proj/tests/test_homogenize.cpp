#include <gtest/gtest.h>

#include <cmath>

#include "pmi/errors.hpp"
#include "pmi/homogenize.hpp"
#include "synthetic.hpp"

using namespace pmi;

namespace {

Polynomial X(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial K(std::size_t n, long c) { return Polynomial::constant(n, c); }
SymPolyMatrix S(const Polynomial& p) { return SymPolyMatrix::scalar(p); }

}  // namespace

TEST(LiftProblem, Examples) {
  Polynomial x = X(1, 0);
  Polynomial x0 = X(2, 0), x1 = X(2, 1);
  HomogenizedProblem a = lift_problem(S(x * x + K(1, 1)), S(K(1, 1)));
  EXPECT_EQ(a.f_tilde(0, 0), x1 * x1 + x0 * x0);
  EXPECT_EQ(a.d0, 0u);
  EXPECT_EQ(a.g_hat(0, 0), K(2, 1));
  HomogenizedProblem b = lift_problem(S(x), S(K(1, 1) - x * x));
  EXPECT_EQ(b.d0, 0u);
  EXPECT_EQ(b.g_hat(0, 0), x0 * x0 - x1 * x1);
  HomogenizedProblem c = lift_problem(S(x), S(K(1, 1) - x));
  EXPECT_EQ(c.d0, 1u);
  EXPECT_EQ(c.g_hat(0, 0), x0 * (x0 - x1));
  EXPECT_EQ(c.sphere, x0 * x0 + x1 * x1 - K(2, 1));
}

TEST(FtildeMin, Examples) {
  Polynomial x = X(1, 0);
  HomogenizedProblem a = lift_problem(S(x * x + K(1, 1)), S(K(1, 1)));
  EXPECT_NEAR(estimate_ftilde_min(a).value, 1.0, 1e-9);
  Polynomial shifted = (x - K(1, 1)) * (x - K(1, 1)) + K(1, 1);
  FtildeMinEstimate e = estimate_ftilde_min(lift_problem(S(shifted), S(K(1, 1))));
  EXPECT_NEAR(e.value, 1.5 - std::sqrt(5.0) / 2, 1e-4);
  EXPECT_NEAR(std::hypot(e.argmin[0], e.argmin[1]), 1.0, 1e-9);
  EXPECT_LE(estimate_ftilde_min(lift_problem(S(x), S(K(1, 1)))).value, 0.0);
}

TEST(FtildeMin, ConstrainedHigherDimensional) {
  // F = x1^2 + x2^2 + 1 over the unit disc: F_tilde = x0^2 + ||x||^2 = 1 on the sphere.
  std::size_t n = 2;
  SymPolyMatrix f = S(squared_norm(n) + K(n, 1));
  SymPolyMatrix g = S(K(n, 1) - squared_norm(n));
  FtildeMinEstimate e = estimate_ftilde_min(lift_problem(f, g));
  EXPECT_NEAR(e.value, 1.0, 1e-6);
  EXPECT_GT(e.feasible_samples, 0u);
}

TEST(Dehomogenize, TrivialCertificates) {
  // F = 1, F_tilde = x0^2 + x^2 is not 1 for d = 0: use the constant problem of degree 0.
  HomogenizedProblem p = lift_problem(S(K(1, 1)), S(K(1, 1)));
  QMCertificate c;
  c.nvars = 2;
  c.degree = 0;
  c.sos.push_back({{{0, 0}}, ExtMatrix::identity(1)});
  DehomogenizedCertificate d = dehomogenize_certificate(c, p, S(K(1, 1)), S(K(1, 1)));
  EXPECT_EQ(d.k, 0u);
  EXPECT_EQ(d.target, S(K(1, 1)));

  // F = x^2 + 1: F_tilde = x0^2 + x1^2 with Gram identity over (x0, x1).
  Polynomial x = X(1, 0);
  SymPolyMatrix f = S(x * x + K(1, 1));
  HomogenizedProblem p2 = lift_problem(f, S(K(1, 1)));
  QMCertificate c2;
  c2.nvars = 2;
  c2.degree = 2;
  c2.sos.push_back({{{1, 0}, {0, 1}}, ExtMatrix::identity(2)});
  DehomogenizedCertificate d2 = dehomogenize_certificate(c2, p2, f, S(K(1, 1)));
  EXPECT_EQ(d2.k, 0u);
  EXPECT_TRUE(verify_certificate(d2.target, S(K(1, 1)), d2.certificate, CertMode::kExact).ok);
}

TEST(Dehomogenize, SphereTermVanishes) {
  Polynomial x = X(1, 0);
  SymPolyMatrix f = S(x * x + K(1, 1));
  HomogenizedProblem p = lift_problem(f, S(K(1, 1)));
  QMCertificate c;
  c.nvars = 2;
  c.degree = 2;
  // F_tilde = 1 * (x0^2 + x1^2 - 1) + 1
  c.sos.push_back({{{0, 0}}, ExtMatrix::identity(1)});
  c.ideal.push_back({p.sphere, S(K(2, 1))});
  DehomogenizedCertificate d = dehomogenize_certificate(c, p, f, S(K(1, 1)));
  EXPECT_TRUE(d.certificate.ideal.empty());
  EXPECT_TRUE(verify_certificate(d.target, S(K(1, 1)), d.certificate, CertMode::kExact).ok);
}

TEST(Dehomogenize, RejectsInvalidInput) {
  Polynomial x = X(1, 0);
  SymPolyMatrix f = S(x * x + K(1, 1));
  HomogenizedProblem p = lift_problem(f, S(K(1, 1)));
  QMCertificate c;
  c.nvars = 2;
  c.degree = 2;
  c.sos.push_back({{{1, 0}}, ExtMatrix::identity(1)});
  EXPECT_THROW(dehomogenize_certificate(c, p, f, S(K(1, 1))), InputError);
}

TEST(Dehomogenize, SyntheticOddPartsCancel) {
  std::mt19937 rng(181);
  for (int i = 0; i < 6; ++i) {
    auto inst = testkit::synthetic_sphere_instance(rng, 1 + i % 2, 2);
    ASSERT_EQ(inst.prob.f_tilde, inst.f.homogenize(inst.f.degree()));
    DehomogenizedCertificate d = dehomogenize_certificate(inst.cert, inst.prob, inst.f, inst.g);
    EXPECT_TRUE(verify_certificate(d.target, inst.g, d.certificate, CertMode::kExact).ok);
  }
}

TEST(Perturb, Exponents) {
  Polynomial x = X(1, 0);
  Polynomial one_plus = K(1, 1) + x * x;
  EXPECT_EQ(perturb_for_nonneg(S(x), 1), S(x + one_plus));
  EXPECT_EQ(perturb_for_nonneg(S(x * x), 1), S(x * x + one_plus * one_plus));
  SymPolyMatrix z = perturb_for_nonneg(S(Polynomial(1)), 1);
  EXPECT_EQ(z, S(one_plus));
  EXPECT_NEAR(estimate_ftilde_min(lift_problem(z, S(K(1, 1)))).value, 1.0, 1e-9);
}
