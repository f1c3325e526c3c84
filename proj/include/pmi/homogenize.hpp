#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmi/certificate.hpp"
#include "pmi/poly_matrix.hpp"

namespace pmi {

// Homogenized problem in variables (x0, x1, ..., xn), x0 at index 0, on the
// unit sphere x0^2 + ||x||^2 = 1.
struct HomogenizedProblem {
  std::size_t nvars = 0;  // n, the original variable count
  unsigned f_degree = 0;
  unsigned g_degree = 0;
  unsigned d0 = 0;        // 2 ceil(d_G / 2) - d_G
  SymPolyMatrix f_tilde;  // x0^d F(x / x0)
  SymPolyMatrix g_hat;    // x0^d0 * x0^d_G G(x / x0)
  Polynomial sphere;      // x0^2 + ||x||^2 - 1
};

HomogenizedProblem lift_problem(const SymPolyMatrix& f, const SymPolyMatrix& g);

class EmptyFeasibleSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FtildeMinEstimate {
  double value = 0.0;
  std::vector<double> argmin;  // point on the sphere, x0 first
  std::size_t samples = 0;
  std::size_t feasible_samples = 0;
};

// Sphere sampling (circle for n = 1, Fibonacci lattice for n = 2, a seeded
// normalized Gaussian cloud beyond) filtered by lambda_min(G_hat) >= -1e-9,
// then projected coordinate descent from the best samples.
FtildeMinEstimate estimate_ftilde_min(const HomogenizedProblem& prob, std::size_t grid = 720,
                                      unsigned refine_iters = 50);

class OddPartNonzero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DehomogenizedCertificate {
  unsigned k = 0;  // certificate is for (1 + ||x||^2)^k F
  QMCertificate certificate;
  SymPolyMatrix target;  // (1 + ||x||^2)^k F
};

// Turns an exact certificate for F_tilde over {G_hat >= 0, sphere} into one for
// (1 + ||x||^2)^k F over {G >= 0} by substituting (1, x) / sqrt(1 + ||x||^2).
DehomogenizedCertificate dehomogenize_certificate(const QMCertificate& cert, const HomogenizedProblem& prob,
                                                  const SymPolyMatrix& f, const SymPolyMatrix& g);

// F + eps (1 + ||x||^2)^ceil((d + 1) / 2) I.
SymPolyMatrix perturb_for_nonneg(const SymPolyMatrix& f, const ExtRational& eps);

}  // namespace pmi
