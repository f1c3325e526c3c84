#include "pmi/ext_rational.hpp"

#include <cctype>
#include <cmath>

#include "pmi/errors.hpp"

namespace pmi {

namespace {

bool perfect_square(unsigned long n, unsigned long* root) {
  mpz_class z(n);
  if (mpz_perfect_square_p(z.get_mpz_t()) == 0) return false;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), z.get_mpz_t());
  *root = s.get_ui();
  return true;
}

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

ExtRational::ExtRational(const mpq_class& a, const mpq_class& b, unsigned long radicand)
    : a_(a), b_(b), r_(radicand) {
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

void ExtRational::normalize() {
  if (sgn(b_) == 0) {
    r_ = 0;
    return;
  }
  unsigned long root = 0;
  if (perfect_square(r_, &root)) {
    a_ += b_ * root;
    b_ = 0;
    r_ = 0;
  }
}

ExtRational ExtRational::sqrt_of(unsigned long n) { return ExtRational(0, 1, n); }

unsigned long ExtRational::merged_radicand(const ExtRational& o) const {
  if (sgn(b_) == 0) return o.r_;
  if (sgn(o.b_) == 0) return r_;
  if (r_ != o.r_) {
    throw RadicandMismatch("cannot combine sqrt(" + std::to_string(r_) + ") and sqrt(" +
                           std::to_string(o.r_) + ")");
  }
  return r_;
}

int ExtRational::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 r; equality is impossible for non-square r.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = b_ * b_ * r_;
  return lhs > rhs ? sa : sb;
}

double ExtRational::to_double() const {
  if (sgn(b_) == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(r_));
}

ExtRational ExtRational::inverse() const {
  if (is_zero()) throw InputError("division by zero");
  if (sgn(b_) == 0) {
    ExtRational out;
    out.a_ = 1 / a_;
    return out;
  }
  mpq_class norm = a_ * a_ - b_ * b_ * r_;
  return ExtRational(a_ / norm, -b_ / norm, r_);
}

ExtRational ExtRational::operator-() const {
  ExtRational out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

ExtRational& ExtRational::operator+=(const ExtRational& o) {
  if (sgn(o.b_) == 0) {
    a_ += o.a_;
    return *this;
  }
  r_ = merged_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) r_ = 0;
  return *this;
}

ExtRational& ExtRational::operator-=(const ExtRational& o) {
  if (sgn(o.b_) == 0) {
    a_ -= o.a_;
    return *this;
  }
  r_ = merged_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (sgn(b_) == 0) r_ = 0;
  return *this;
}

ExtRational& ExtRational::operator*=(const ExtRational& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  unsigned long r = merged_radicand(o);
  mpq_class na = a_ * o.a_ + b_ * o.b_ * r;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  r_ = sgn(b_) == 0 ? 0 : r;
  return *this;
}

ExtRational& ExtRational::operator/=(const ExtRational& o) {
  if (sgn(o.b_) == 0) {
    if (sgn(o.a_) == 0) throw InputError("division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string ExtRational::to_token() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string rad = "*sqrt(" + std::to_string(r_) + ")";
  if (sgn(a_) == 0) return b_.get_str() + rad;
  std::string bs = b_.get_str();
  if (sgn(b_) > 0) bs = "+" + bs;
  return a_.get_str() + bs + rad;
}

std::string ExtRational::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string rad = "*sqrt(" + std::to_string(r_) + ")";
  if (sgn(a_) == 0) return b_.get_str() + rad;
  mpq_class mag = abs(b_);
  return a_.get_str() + (sgn(b_) > 0 ? " + " : " - ") + mag.get_str() + rad;
}

mpq_class rational_from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value");
  return mpq_class(v);
}

mpq_class parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw InputError("empty rational");
  bool decimal = s.find_first_of(".eE") != std::string::npos;
  if (!decimal) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
    if (s.find('/') != std::string::npos) {
      mpz_class den(s.substr(s.find('/') + 1));
      if (den == 0) throw InputError("zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, converted exactly.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw InputError("malformed decimal '" + s + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) --exp10;
    } else {
      throw InputError("malformed decimal '" + s + "'");
    }
  }
  if (!any_digit) throw InputError("malformed decimal '" + s + "'");
  if (pos < s.size()) {
    std::string e = s.substr(pos + 1);
    try {
      std::size_t used = 0;
      long ev = std::stol(e, &used);
      if (used != e.size()) throw InputError("malformed exponent in '" + s + "'");
      exp10 += ev;
    } catch (const std::logic_error&) {
      throw InputError("malformed exponent in '" + s + "'");
    }
  }
  mpq_class q{mpz_class(digits)};
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0) {
    q *= p10;
  } else {
    q /= p10;
  }
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

ExtRational ExtRational::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw InputError("empty coefficient");
  std::size_t sq = s.find("sqrt(");
  if (sq == std::string::npos) return ExtRational(parse_rational(s));
  std::size_t close = s.find(')', sq);
  if (close == std::string::npos || close + 1 != s.size()) {
    throw InputError("malformed coefficient '" + s + "'");
  }
  unsigned long radicand = 0;
  try {
    std::string rs = s.substr(sq + 5, close - sq - 5);
    std::size_t used = 0;
    radicand = std::stoul(rs, &used);
    if (used != rs.size()) throw InputError("malformed radicand in '" + s + "'");
  } catch (const std::logic_error&) {
    throw InputError("malformed radicand in '" + s + "'");
  }
  // Locate the split between rational part and radical coefficient: the last
  // '+' or '-' before "sqrt(" that is not a leading sign or exponent sign.
  std::string head = s.substr(0, sq);
  if (!head.empty() && head.back() == '*') head.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' && head[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  mpq_class a = 0;
  std::string bpart = head;
  if (split != std::string::npos) {
    a = parse_rational(head.substr(0, split));
    bpart = head.substr(split);
  }
  mpq_class b;
  if (bpart.empty() || bpart == "+") {
    b = 1;
  } else if (bpart == "-") {
    b = -1;
  } else {
    b = parse_rational(bpart[0] == '+' ? bpart.substr(1) : bpart);
  }
  return ExtRational(a, b, radicand);
}

}  // namespace pmi
