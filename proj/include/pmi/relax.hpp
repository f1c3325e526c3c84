#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmi/certificate.hpp"
#include "pmi/poly_matrix.hpp"

namespace pmi {

// One nonzero of a symmetric constraint matrix, upper triangle (i <= j), 0-based.
struct SparseEntry {
  std::size_t block = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  ExtRational value;
};

// Order-k matrix SOS relaxation: maximize gamma subject to
// f - gamma = z^T Q0 z + sum_{a,b} G_ab (z'^T Q1[a,b] z'), Q0, Q1 PSD,
// where z spans monomials of degree <= k and z' those of degree <= k', with
// 2 k' + d_G <= 2k.
struct SDPProblem {
  std::size_t nvars = 0;
  unsigned order = 0;
  Polynomial f;
  SymPolyMatrix g;
  std::vector<Exponent> basis0;
  std::vector<Exponent> basis1;
  std::vector<Exponent> monomials;  // one equality constraint per monomial, |gamma| <= 2k
  std::vector<std::size_t> block_sizes;  // {N0, m * N1}
  std::vector<std::vector<SparseEntry>> constraints;  // matrix A_c per monomial
  std::vector<ExtRational> rhs;  // coefficient of f per monomial
};

// Multiplier basis degree k' = floor((2k - d_G) / 2); throws when 2k < deg f or 2k < d_G.
SDPProblem build_relaxation(const Polynomial& f, const SymPolyMatrix& g, unsigned k);

enum class SolveStatus { kOptimal, kMaxIterations, kInfeasible };
std::string to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-8;
  unsigned max_iter = 100;
};

struct RelaxResult {
  SolveStatus status = SolveStatus::kMaxIterations;
  double gamma = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  unsigned iterations = 0;
  std::vector<Eigen::MatrixXd> blocks;  // Gram blocks Q0, Q1
  // Filled by relax(): exact certified gamma and the numeric certificate for f - gamma.
  mpq_class certified_gamma;
  QMCertificate certificate;
};

// Primal-dual interior point method on min <A_const, X> s.t. <A_c, X> = f_c for
// the non-constant monomials; gamma = f_0 - <A_const, X>.
RelaxResult solve_sdp(const SDPProblem& p, const SolveOptions& options = {});

struct ExtractedCertificate {
  QMCertificate certificate;
  mpq_class gamma;   // f - gamma is matched exactly by the certificate terms
  Polynomial target;  // f - gamma
};

// Rationalizes the Gram blocks, splits Q1 into weighted multiplier columns by
// eigendecomposition, fixes gamma from the constant coefficient and folds the
// remaining coefficient mismatch into Q0 so the identity is exact.
ExtractedCertificate extract_certificate(const RelaxResult& r, const SDPProblem& p);

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& msg, RelaxResult result) : std::runtime_error(msg), result(std::move(result)) {}
  RelaxResult result;
};

// Build, solve, extract. Throws SolveError when the solver does not reach kOptimal.
RelaxResult relax(const Polynomial& f, const SymPolyMatrix& g, unsigned k, const SolveOptions& options = {});

// f_k for k in [k_from, k_to]; throws InternalError if the values decrease by more than 2 tol.
std::vector<double> hierarchy(const Polynomial& f, const SymPolyMatrix& g, unsigned k_from, unsigned k_to,
                              const SolveOptions& options = {});

}  // namespace pmi
