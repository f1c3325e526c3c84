#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pmi/ext_rational.hpp"

namespace pmi {

using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

// Higher total degree first; ties broken lexicographically, larger first.
// This is the canonical term order for printing.
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Lower total degree first; ties broken lexicographically, larger first.
// This is the order of monomial bases and of Bernstein multi-indices.
struct BasisOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// All exponents of total degree exactly t, x1-heavy first.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned t);
// All exponents of total degree <= t, ordered by degree ascending, then x1-heavy first.
std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned t);
// Number of exponents in nvars variables of total degree <= t.
std::size_t count_monomials_up_to(std::size_t nvars, unsigned t);

class Polynomial {
 public:
  using TermMap = std::map<Exponent, ExtRational, GrlexDescending>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const ExtRational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Exponent& e, const ExtRational& c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  // Zero polynomial reports degree 0.
  unsigned degree() const;
  bool is_homogeneous() const;
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  ExtRational coefficient(const Exponent& e) const;
  ExtRational constant_term() const;
  // Radicand shared by the irrational coefficients, 0 when all are rational.
  unsigned long radicand() const;

  void add_term(const Exponent& e, const ExtRational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const ExtRational& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const ExtRational& c) { return p *= c; }
  friend Polynomial operator*(const ExtRational& c, Polynomial p) { return p *= c; }
  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t index) const;

  ExtRational evaluate(const std::vector<ExtRational>& point) const;
  double evaluate(const std::vector<double>& point) const;

  // x0^target * p(x / x0), with x0 inserted as variable index 0.
  Polynomial homogenize(unsigned target_degree) const;
  // Sets variable 0 to 1 and drops it.
  Polynomial dehomogenize() const;
  // Replaces each variable x_i by scale * x_i.
  Polynomial scale_variables(const ExtRational& scale) const;
  // Embeds into more variables; the original variables keep indices offset..offset+nvars-1.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const;

  // Canonical text; variables are named x<first_index>, x<first_index+1>, ...
  std::string to_string(unsigned first_index = 1) const;
  static Polynomial parse(std::string_view text, std::size_t nvars, unsigned first_index = 1);

 private:
  void check_same(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace pmi
