#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmi/bernstein.hpp"
#include "pmi/bounds.hpp"
#include "pmi/poly_matrix.hpp"

namespace pmi {

// Smallest integer strictly above d(d-1) normB / (2 fmin) - d, floored at 0.
unsigned long polya_bound(unsigned d, double norm_b, double fmin);

enum class PdMode { kExactMinors, kNumeric };

struct PolyaCertificate {
  unsigned degree = 0;        // final Bernstein degree t
  unsigned input_degree = 0;  // deg F
  BernsteinExpansion expansion;
  PdMode mode = PdMode::kExactMinors;
  // Per alpha in expansion order: smallest leading principal minor (exact mode)
  // or smallest eigenvalue (numeric mode).
  std::vector<double> margins;
  // Advisory data from the grid estimate.
  double norm_b = 0.0;
  double fmin_estimate = 0.0;
  unsigned long bound_k = 0;  // polya_bound(deg F, norm_b, fmin_estimate)
};

class NotPositiveDefiniteOnSimplex : public std::runtime_error {
 public:
  NotPositiveDefiniteOnSimplex(const std::string& msg, std::optional<std::vector<ExtRational>> witness,
                               double witness_min_eigenvalue)
      : std::runtime_error(msg), witness(std::move(witness)), witness_min_eigenvalue(witness_min_eigenvalue) {}
  // A point of the scaled simplex where F is exactly not positive definite.
  std::optional<std::vector<ExtRational>> witness;
  double witness_min_eigenvalue;
};

struct PolyaOptions {
  unsigned max_degree = 40;
  double numeric_tol = 1e-10;  // PD margin for sizes above the exact limit
  unsigned grid_resolution = 0;  // 0: default lattice
};

// Coefficient matrices of (y_1 + ... + y_N)^k Fh keyed by exponent, each
// multiplied by alpha! / (k + deg Fh)!.
std::map<Exponent, RationalSymMatrix, BasisOrder> scherer_hol_step(const SymPolyMatrix& fh, unsigned k);

PolyaCertificate polya_certificate(const SymPolyMatrix& f, const PolyaOptions& options = {});

// Exact strict PD test on one coefficient matrix; records the margin.
bool coefficient_is_pd(const RationalSymMatrix& m, PdMode mode, double tol, double* margin);

std::string format_polya_certificate(const PolyaCertificate& c);

}  // namespace pmi
