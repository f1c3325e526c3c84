#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pmi/poly_matrix.hpp"
#include "pmi/polynomial.hpp"

namespace pmi {

// Parameters shared by the degree-bound formulas. ratio is ||F||_B / F_min
// (or the homogenized analogue); kappa, eta and C are user-supplied.
struct BoundInputs {
  unsigned n = 1;
  unsigned m = 2;
  unsigned d = 1;
  unsigned d_G = 1;
  mpq_class ratio = 1;
  mpq_class kappa = 1;
  mpq_class eta = 1;
  mpq_class C = 1;
};

struct BoundFactor {
  std::string name;      // e.g. "8^(7*eta)"
  mpq_class base;
  mpq_class exponent;
  std::optional<mpq_class> value;  // present when the power is rational
  double log10_value = 0.0;
};

struct BoundReport {
  std::string formula_id;
  std::vector<BoundFactor> factors;  // includes the constant C as the first factor
  bool exact = false;
  mpq_class value;                   // product of factors, valid when exact
  std::optional<mpz_class> k;        // smallest integer >= value, valid when exact
  double log10_value = 0.0;
  // Only for the Putinar-Vasilescu bound: the certificate degree 2k + d.
  std::optional<mpz_class> final_degree;
  std::optional<double> final_degree_log10;
  std::vector<std::string> caveats;
};

// Exact evaluation is skipped when the result would exceed this many digits.
inline constexpr double kMaxExactDigits = 20000.0;

mpz_class theta(unsigned m);

BoundReport putinar_matrix_bound(const BoundInputs& in);
BoundReport putinar_scalar_bound(const BoundInputs& in);
BoundReport licq_bound(const BoundInputs& in);
BoundReport pv_bound(const BoundInputs& in);
BoundReport perturbation_bound(const mpq_class& eps, const mpq_class& eta, const mpq_class& C);

enum class EtaSetting { kScalar, kMatrix, kHomogenized };
mpz_class eta_estimate(unsigned n, unsigned m, unsigned d_G, EtaSetting setting);
// d * (3d - 3)^(n - 1)
mpz_class lojasiewicz_exponent_formula(unsigned n, unsigned d);

// 3 * (C 8^(7 eta) 3^(6(m-1)) theta^3 n^2 d_G^6 kappa^7 d^(14 eta))^(1/(7 eta + 3)) * norm * k^(-1/(7 eta + 3)).
double convergence_rate(const BoundInputs& in, double norm_f_b, double k);

struct MarkovReport {
  double factor = 0.0;     // 2d(2d - 1) / (sqrt(n) + 1)
  double sup_bound = 0.0;  // Bernstein norm, an upper bound for sup |p| on the simplex
  double bound = 0.0;      // factor * sup_bound
};
MarkovReport markov_gradient_bound(const Polynomial& p);

// Grid estimate of min over the scaled simplex of lambda_min(F), with a
// Lipschitz lower bound from the Markov inequality.
struct SimplexMinEstimate {
  double grid_min = 0.0;
  std::vector<ExtRational> argmin;
  std::size_t points = 0;
  unsigned resolution = 0;
  double lipschitz = 0.0;
  double covering_radius = 0.0;
  double lower_bound = 0.0;
};
// resolution 0 picks the default lattice (about 10^n (deg + 1) points).
SimplexMinEstimate estimate_fmin_simplex(const SymPolyMatrix& f, unsigned resolution = 0);
unsigned default_simplex_resolution(std::size_t nvars, unsigned degree);

std::string format_bound_report(const BoundReport& r);

}  // namespace pmi
