#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pmi {

// Exact value a + b*sqrt(r) with rational a, b and a nonnegative integer r.
//
// A value with b == 0 carries radicand 0 and combines with any radicand.
// Perfect-square radicands are folded into the rational part on construction.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(long v) : a_(v) {}  // NOLINT: implicit by design
  ExtRational(int v) : a_(v) {}   // NOLINT
  ExtRational(const mpq_class& a) : a_(a) { a_.canonicalize(); }  // NOLINT
  ExtRational(const mpq_class& a, const mpq_class& b, unsigned long radicand);

  static ExtRational sqrt_of(unsigned long n);
  // Parses "p", "p/q", "p/q+r/s*sqrt(n)", "r/s*sqrt(n)", "sqrt(n)", with optional spaces.
  static ExtRational parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& radical_part() const { return b_; }
  unsigned long radicand() const { return r_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;
  double to_double() const;

  ExtRational inverse() const;
  ExtRational operator-() const;
  ExtRational& operator+=(const ExtRational& o);
  ExtRational& operator-=(const ExtRational& o);
  ExtRational& operator*=(const ExtRational& o);
  ExtRational& operator/=(const ExtRational& o);

  friend ExtRational operator+(ExtRational x, const ExtRational& y) { return x += y; }
  friend ExtRational operator-(ExtRational x, const ExtRational& y) { return x -= y; }
  friend ExtRational operator*(ExtRational x, const ExtRational& y) { return x *= y; }
  friend ExtRational operator/(ExtRational x, const ExtRational& y) { return x /= y; }

  friend bool operator==(const ExtRational& x, const ExtRational& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.r_ == y.r_);
  }
  friend bool operator<(const ExtRational& x, const ExtRational& y) { return (x - y).sign() < 0; }
  friend bool operator>(const ExtRational& x, const ExtRational& y) { return y < x; }
  friend bool operator<=(const ExtRational& x, const ExtRational& y) { return !(y < x); }
  friend bool operator>=(const ExtRational& x, const ExtRational& y) { return !(x < y); }

  // Compact form without spaces: "3/4", "1/2+3/4*sqrt(2)", "-1/2*sqrt(3)".
  std::string to_token() const;
  // Display form used inside polynomial text: "1/2 + 3/4*sqrt(2)".
  std::string to_string() const;

 private:
  void normalize();
  unsigned long merged_radicand(const ExtRational& o) const;

  mpq_class a_;
  mpq_class b_;
  unsigned long r_ = 0;
};

// Exact rational value of a finite double.
mpq_class rational_from_double(double v);
// Parses "p", "p/q" or a decimal like "-1.25e-3" exactly.
mpq_class parse_rational(std::string_view text);

}  // namespace pmi
