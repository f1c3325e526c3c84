#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pmi/poly_matrix.hpp"

namespace pmi::testkit {

inline mpq_class rand_rational(std::mt19937& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(-num_max, num_max);
  std::uniform_int_distribution<int> den(1, den_max);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned degree, int num_max = 3,
                              int den_max = 2, double density = 0.7) {
  std::bernoulli_distribution keep(density);
  Polynomial p(nvars);
  for (const auto& e : monomials_up_to(nvars, degree))
    if (keep(rng)) p.add_term(e, ExtRational(rand_rational(rng, num_max, den_max)));
  return p;
}

inline SymPolyMatrix random_sym(std::mt19937& rng, std::size_t size, std::size_t nvars, unsigned degree,
                                int num_max = 3, int den_max = 2) {
  SymPolyMatrix g(size, nvars);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) g.set(i, j, random_poly(rng, nvars, degree, num_max, den_max));
  return g;
}

// B(x)^T B(x) with B of affine entries: PSD everywhere, entries of degree <= 2.
inline SymPolyMatrix random_gram_like(std::mt19937& rng, std::size_t size, std::size_t nvars) {
  PolyMatrix b(size, size, nvars);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) b(i, j) = random_poly(rng, nvars, 1, 2, 1);
  return SymPolyMatrix(b.transpose() * b);
}

inline std::vector<ExtRational> random_point(std::mt19937& rng, std::size_t nvars, int num_max = 4,
                                             int den_max = 3) {
  std::vector<ExtRational> p;
  for (std::size_t i = 0; i < nvars; ++i) p.emplace_back(rand_rational(rng, num_max, den_max));
  return p;
}

inline RationalSymMatrix random_rational_sym(std::mt19937& rng, std::size_t size, int num_max = 5) {
  RationalSymMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) {
      m(i, j) = ExtRational(rand_rational(rng, num_max, 3));
      m(j, i) = m(i, j);
    }
  return m;
}

// L L^T with L random lower triangular: exactly PSD, possibly singular.
inline RationalSymMatrix random_psd(std::mt19937& rng, std::size_t size, std::size_t rank) {
  ExtMatrix l(size, rank);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < rank; ++j) l(i, j) = ExtRational(rand_rational(rng, 3, 2));
  return l * l.transpose();
}

inline std::vector<double> unit_vector(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> nd;
  std::vector<double> v(dim);
  double s = 0;
  for (auto& x : v) {
    x = nd(rng);
    s += x * x;
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

}  // namespace pmi::testkit
