#include "pmi/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "pmi/errors.hpp"

namespace pmi {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

bool BasisOrder::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

namespace {

void fill_degree(std::size_t nvars, std::size_t pos, unsigned remaining, Exponent& cur,
                 std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned v = remaining + 1; v-- > 0;) {
    cur[pos] = v;
    fill_degree(nvars, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned t) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    if (t == 0) out.emplace_back();
    return out;
  }
  Exponent cur(nvars, 0);
  fill_degree(nvars, 0, t, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned t) {
  std::vector<Exponent> out;
  for (unsigned d = 0; d <= t; ++d) {
    auto part = monomials_of_degree(nvars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::size_t count_monomials_up_to(std::size_t nvars, unsigned t) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), nvars + t, t);
  return c.get_ui();
}

Polynomial Polynomial::constant(std::size_t nvars, const ExtRational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const Exponent& e, const ExtRational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

unsigned Polynomial::degree() const {
  if (terms_.empty()) return 0;
  return total_degree(terms_.begin()->first);
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return total_degree(t.first) == d; });
}

ExtRational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ExtRational() : it->second;
}

ExtRational Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

unsigned long Polynomial::radicand() const {
  for (const auto& [e, c] : terms_) {
    if (c.radicand() != 0) return c.radicand();
  }
  return 0;
}

void Polynomial::add_term(const Exponent& e, const ExtRational& c) {
  if (e.size() != nvars_) throw InputError("exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_same(const Polynomial& o) const {
  if (nvars_ != o.nvars_) {
    throw InputError("variable count mismatch: " + std::to_string(nvars_) + " vs " +
                     std::to_string(o.nvars_));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same(q);
  Polynomial out(p.nvars_);
  Exponent e(p.nvars_);
  for (const auto& [ea, ca] : p.terms_) {
    for (const auto& [eb, cb] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const ExtRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= nvars_) throw InputError("variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    d[index] -= 1;
    out.add_term(d, c * ExtRational(static_cast<long>(e[index])));
  }
  return out;
}

ExtRational Polynomial::evaluate(const std::vector<ExtRational>& point) const {
  if (point.size() != nvars_) throw InputError("point length does not match variable count");
  if (terms_.empty()) return ExtRational();
  unsigned d = degree();
  std::vector<std::vector<ExtRational>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].reserve(d + 1);
    powers[i].emplace_back(1);
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  ExtRational sum;
  for (const auto& [e, c] : terms_) {
    ExtRational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t *= powers[i][e[i]];
    }
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(const std::vector<double>& point) const {
  if (point.size() != nvars_) throw InputError("point length does not match variable count");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t *= std::pow(point[i], static_cast<double>(e[i]));
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::homogenize(unsigned target_degree) const {
  if (!terms_.empty() && target_degree < degree()) {
    throw InputError("homogenization degree " + std::to_string(target_degree) +
                     " is below polynomial degree " + std::to_string(degree()));
  }
  Polynomial out(nvars_ + 1);
  for (const auto& [e, c] : terms_) {
    Exponent h(nvars_ + 1);
    h[0] = target_degree - total_degree(e);
    std::copy(e.begin(), e.end(), h.begin() + 1);
    out.add_term(h, c);
  }
  return out;
}

Polynomial Polynomial::dehomogenize() const {
  if (nvars_ == 0) throw InputError("no variable to dehomogenize");
  Polynomial out(nvars_ - 1);
  for (const auto& [e, c] : terms_) out.add_term(Exponent(e.begin() + 1, e.end()), c);
  return out;
}

Polynomial Polynomial::scale_variables(const ExtRational& scale) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    ExtRational f = c;
    for (unsigned k = 0; k < total_degree(e); ++k) f *= scale;
    out.add_term(e, f);
  }
  return out;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) throw InputError("embedding does not fit");
  Polynomial out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponent h(new_nvars, 0);
    std::copy(e.begin(), e.end(), h.begin() + static_cast<std::ptrdiff_t>(offset));
    out.add_term(h, c);
  }
  return out;
}

std::string Polynomial::to_string(unsigned first_index) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")";
    bool first_factor = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += first_factor ? " * " : "*";
      first_factor = false;
      out += "x" + std::to_string(first_index + i) + "^" + std::to_string(e[i]);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars, unsigned first_index)
      : s_(text), nvars_(nvars), first_(first_index) {}

  Polynomial run() {
    Polynomial out(nvars_);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return out;
      pos_ = save;
    }
    while (true) {
      skip();
      ExtRational sign = 1;
      if (peek('-')) {
        ++pos_;
        sign = -1;
        skip();
      }
      ExtRational coef = 1;
      Exponent e(nvars_, 0);
      if (peek('(')) {
        coef = read_paren();
        skip();
        if (peek('*')) {
          ++pos_;
          read_monomial(e);
        }
      } else if (s_.substr(pos_, 5) == "sqrt(") {
        coef = read_sqrt();
        skip();
        if (peek('*')) {
          ++pos_;
          read_monomial(e);
        }
      } else if (peek('x')) {
        read_monomial(e);
      } else {
        coef = read_bare_number();
        skip();
        if (peek('*')) {
          ++pos_;
          read_monomial(e);
        }
      }
      out.add_term(e, sign * coef);
      skip();
      if (pos_ == s_.size()) break;
      if (peek('+')) {
        ++pos_;
        continue;
      }
      if (peek('-')) continue;
      fail("expected '+' between terms");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " +
                     msg + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  ExtRational read_paren() {
    std::size_t depth = 0;
    std::size_t start = pos_ + 1;
    for (; pos_ < s_.size(); ++pos_) {
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')' && --depth == 0) break;
    }
    if (pos_ >= s_.size()) fail("unbalanced parenthesis");
    std::string_view inner = s_.substr(start, pos_ - start);
    ++pos_;
    try {
      return ExtRational::parse(inner);
    } catch (const InputError& err) {
      fail(err.what());
    }
  }

  ExtRational read_sqrt() {
    std::size_t start = pos_;
    pos_ += 4;
    read_paren();
    try {
      return ExtRational::parse(s_.substr(start, pos_ - start));
    } catch (const InputError& err) {
      fail(err.what());
    }
  }

  ExtRational read_bare_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' || s_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail("expected coefficient");
    return ExtRational(parse_rational(s_.substr(start, pos_ - start)));
  }

  unsigned read_uint() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  void read_monomial(Exponent& e) {
    while (true) {
      skip();
      if (!peek('x')) fail("expected variable");
      ++pos_;
      unsigned idx = read_uint();
      if (idx < first_ || idx - first_ >= nvars_) fail("variable index out of range");
      unsigned power = 1;
      if (peek('^')) {
        ++pos_;
        power = read_uint();
      }
      e[idx - first_] += power;
      skip();
      if (peek('*')) {
        ++pos_;
        continue;
      }
      break;
    }
  }

  std::string_view s_;
  std::size_t nvars_;
  unsigned first_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t nvars, unsigned first_index) {
  return PolyParser(text, nvars, first_index).run();
}

}  // namespace pmi
