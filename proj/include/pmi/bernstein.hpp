#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pmi/exact_matrix.hpp"
#include "pmi/poly_matrix.hpp"
#include "pmi/polynomial.hpp"

namespace pmi {

// Coefficient matrices of a symmetric polynomial matrix in the degree-t
// Bernstein basis on the scaled simplex {1 + x_i >= 0, sqrt(n) - sum x_i >= 0}.
struct BernsteinExpansion {
  std::size_t nvars = 0;
  unsigned degree = 0;
  std::size_t size = 1;
  // Every alpha with |alpha| <= degree is present, zero matrices included.
  std::map<Exponent, RationalSymMatrix, BasisOrder> coeffs;

  friend bool operator==(const BernsteinExpansion& a, const BernsteinExpansion& b) {
    return a.nvars == b.nvars && a.degree == b.degree && a.size == b.size && a.coeffs == b.coeffs;
  }
};

// n + sqrt(n), the edge scale between barycentric and ambient coordinates.
ExtRational simplex_scale(std::size_t nvars);

// Barycentric coordinates (n + 1 entries summing to 1) to the ambient point x.
std::vector<ExtRational> barycentric_to_point(const std::vector<ExtRational>& y);

// The Bernstein basis polynomial of multi-index alpha and degree t in n variables.
Polynomial basis_poly(const Exponent& alpha, unsigned t, std::size_t nvars);

BernsteinExpansion to_bernstein(const SymPolyMatrix& f, unsigned t);
BernsteinExpansion to_bernstein(const Polynomial& f, unsigned t);
SymPolyMatrix from_bernstein(const BernsteinExpansion& e);
BernsteinExpansion elevate(const BernsteinExpansion& e, unsigned target_degree);

// Largest spectral norm over the coefficient matrices.
double bernstein_norm(const BernsteinExpansion& e);
double bernstein_norm(const SymPolyMatrix& f, unsigned t, double tol = 1e-12);
double bernstein_norm(const Polynomial& f, unsigned t, double tol = 1e-12);
// Uses t = deg f.
double bernstein_norm(const SymPolyMatrix& f);
double bernstein_norm(const Polynomial& f);

// Multi-index extended by the implicit last barycentric entry t - |alpha|.
Exponent extend_index(const Exponent& alpha, unsigned t);

// One line per alpha: "alpha <exponents> : <entry> ; <entry> ..." listing the
// upper triangle row by row in canonical text.
std::string format_expansion(const BernsteinExpansion& e);

}  // namespace pmi
