#include <gtest/gtest.h>

#include "pmi/errors.hpp"
#include "pmi/relax.hpp"
#include "pmi/sdpa.hpp"

using namespace pmi;

namespace {

Polynomial X(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial K(std::size_t n, long c) { return Polynomial::constant(n, c); }
SymPolyMatrix S(const Polynomial& p) { return SymPolyMatrix::scalar(p); }
SymPolyMatrix interval() { return S(K(1, 1) - X(1, 0) * X(1, 0)); }

SymPolyMatrix one_x_x_one() {
  PolyMatrix m(2, 2, 1);
  m(0, 0) = m(1, 1) = K(1, 1);
  m(0, 1) = m(1, 0) = X(1, 0);
  return SymPolyMatrix(m);
}

std::size_t binom(std::size_t a, std::size_t b) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST(BuildRelaxation, IntervalSizes) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 1);
  EXPECT_EQ(p.block_sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(p.constraints.size(), 3u);
  EXPECT_EQ(p.basis1.size(), 1u);
}

TEST(BuildRelaxation, OddDegreeConstraint) {
  SDPProblem p = build_relaxation(X(1, 0), one_x_x_one(), 1);
  EXPECT_EQ(p.block_sizes, (std::vector<std::size_t>{2, 2}));
  SDPProblem p2 = build_relaxation(X(1, 0), one_x_x_one(), 2);
  EXPECT_EQ(p2.basis1.size(), 2u);  // 2 deg v + 1 <= 4 allows deg v <= 1
  EXPECT_EQ(p2.block_sizes[1], 4u);
  SDPProblem p3 = build_relaxation(X(1, 0), one_x_x_one(), 3);
  EXPECT_EQ(p3.basis1.size(), 3u);
}

TEST(BuildRelaxation, ConstraintCountIsMonomialCount) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 4; ++k) {
      SDPProblem p = build_relaxation(K(n, 1), S(K(n, 1) - squared_norm(n)), k);
      EXPECT_EQ(p.constraints.size(), binom(n + 2 * k, n));
    }
}

TEST(BuildRelaxation, RejectsLowOrder) {
  EXPECT_THROW(build_relaxation(X(1, 0) * X(1, 0) * X(1, 0), interval(), 1), InputError);
  EXPECT_THROW(build_relaxation(X(1, 0), S(X(1, 0).pow(3)), 1), InputError);
}

TEST(SolveSdp, KnownOptima) {
  EXPECT_NEAR(relax(X(1, 0), interval(), 1).gamma, -1.0, 1e-5);
  EXPECT_NEAR(relax(X(1, 0), one_x_x_one(), 1).gamma, -1.0, 1e-5);
  EXPECT_NEAR(relax(X(1, 0) * X(1, 0), interval(), 1).gamma, 0.0, 1e-5);
  EXPECT_NEAR(relax(K(1, 3), interval(), 1).gamma, 3.0, 1e-5);
}

TEST(SolveSdp, Deterministic) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 2);
  RelaxResult a = solve_sdp(p), b = solve_sdp(p);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SolveSdp, IterationLimitReported) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 2);
  RelaxResult r = solve_sdp(p, {1e-8, 2});
  EXPECT_EQ(r.status, SolveStatus::kMaxIterations);
  EXPECT_THROW(relax(X(1, 0), interval(), 2, {1e-8, 2}), SolveError);
}

TEST(SolveSdp, UnboundedBelowIsInfeasible) {
  // x is unbounded below on R, so no gamma is feasible.
  RelaxResult r = solve_sdp(build_relaxation(X(1, 0), S(K(1, 1)), 1), {1e-8, 200});
  EXPECT_NE(r.status, SolveStatus::kOptimal);
}

TEST(Hierarchy, Examples) {
  auto v = hierarchy(X(1, 0), interval(), 1, 3);
  ASSERT_EQ(v.size(), 3u);
  for (double x : v) EXPECT_NEAR(x, -1.0, 1e-5);
  auto w = hierarchy(-(X(1, 0) * X(1, 0)), interval(), 1, 2);
  for (double x : w) EXPECT_NEAR(x, -1.0, 1e-5);
}

TEST(Hierarchy, MonotoneOnTwoVariables) {
  std::size_t n = 2;
  Polynomial f = X(n, 0) * X(n, 0) * X(n, 1) - X(n, 0) + X(n, 1) * ExtRational(mpq_class(1, 2));
  auto v = hierarchy(f, S(K(n, 1) - squared_norm(n)), 2, 3);
  EXPECT_GE(v[1], v[0] - 2e-8);
  EXPECT_LE(v[1], f.evaluate(std::vector<double>{0.6, -0.7}) + 1e-7);
}

TEST(Extract, IntervalCertificateVerifies) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 1);
  RelaxResult r = solve_sdp(p);
  ExtractedCertificate ec = extract_certificate(r, p);
  VerifyReport v = verify_certificate(S(ec.target), interval(), ec.certificate, CertMode::kNumeric, 1e-7);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.residual_norm, 0.0);
  ASSERT_EQ(ec.certificate.multipliers.size(), 1u);
  EXPECT_NEAR(ec.certificate.multipliers[0].weight.to_double(), 0.5, 1e-5);
  EXPECT_NEAR(ec.gamma.get_d(), -1.0, 1e-5);
}

TEST(Extract, ConstantObjectiveGivesEmptyCertificate) {
  SDPProblem p = build_relaxation(K(1, 3), interval(), 1);
  ExtractedCertificate ec = extract_certificate(solve_sdp(p), p);
  EXPECT_TRUE(ec.certificate.sos.empty());
  EXPECT_TRUE(ec.certificate.multipliers.empty());
  EXPECT_EQ(ec.gamma, 3);
}

TEST(Extract, TamperedResultRejected) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 1);
  RelaxResult r = solve_sdp(p);
  ExtractedCertificate ec = extract_certificate(r, p);
  ec.certificate.multipliers[0].weight = -ec.certificate.multipliers[0].weight;
  EXPECT_FALSE(verify_certificate(S(ec.target), interval(), ec.certificate, CertMode::kNumeric, 1e-7).ok);
}

TEST(Sdpa, IntervalHeaderAndEntries) {
  SDPProblem p = build_relaxation(X(1, 0), interval(), 1);
  std::string text = export_sdpa(p);
  SdpaData d = parse_sdpa(text);
  EXPECT_EQ(d.mdim, 3);
  EXPECT_EQ(d.nblocks, 2);
  EXPECT_EQ(d.block_sizes, (std::vector<int>{2, 1}));
  EXPECT_EQ(d.objective, (std::vector<double>{0, 1, 0}));
  std::size_t nnz = 0;
  for (const auto& c : p.constraints) nnz += c.size();
  EXPECT_EQ(d.entries.size(), nnz);
  EXPECT_EQ(export_sdpa(build_relaxation(X(1, 0), interval(), 1)), text);
  EXPECT_EQ(parse_sdpa(export_sdpa(p, -1)).objective[0], 1.0);
}

TEST(Sdpa, MalformedRejected) {
  EXPECT_THROW(parse_sdpa("3\n2\n2 1\n"), InputError);
  EXPECT_THROW(parse_sdpa("1\n1\n2\n0\n1 1 3 3 1\n"), InputError);
  EXPECT_THROW(parse_sdpa("1\n1\n2 2\n0\n"), InputError);
}
