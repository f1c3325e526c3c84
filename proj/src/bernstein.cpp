#include "pmi/bernstein.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "pmi/errors.hpp"
#include "pmi/numeric.hpp"

namespace pmi {

namespace {

mpz_class factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

// t! / (alpha_1! ... alpha_n! (t - |alpha|)!)
mpz_class multinomial(const Exponent& alpha, unsigned t) {
  mpz_class denom = factorial(t - total_degree(alpha));
  for (unsigned a : alpha) denom *= factorial(a);
  return factorial(t) / denom;
}

std::shared_ptr<const ExtMatrix> conversion_matrix(std::size_t nvars, unsigned t) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::shared_ptr<const ExtMatrix>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({nvars, t});
    if (it != cache.end()) return it->second;
  }
  std::vector<Exponent> idx = monomials_up_to(nvars, t);
  std::size_t n = idx.size();
  std::map<Exponent, std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) pos[idx[k]] = k;
  ExtMatrix a(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    Polynomial b = basis_poly(idx[col], t, nvars);
    for (const auto& [e, c] : b.terms()) a(pos.at(e), col) = c;
  }
  auto inv = std::make_shared<const ExtMatrix>(inverse(a));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(nvars, t), inv);
  return inv;
}

}  // namespace

ExtRational simplex_scale(std::size_t nvars) {
  return ExtRational(static_cast<long>(nvars)) + ExtRational::sqrt_of(nvars);
}

std::vector<ExtRational> barycentric_to_point(const std::vector<ExtRational>& y) {
  if (y.size() < 2) throw InputError("barycentric point needs at least two entries");
  std::size_t n = y.size() - 1;
  ExtRational scale = simplex_scale(n);
  std::vector<ExtRational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = scale * y[i] - ExtRational(1);
  return x;
}

Exponent extend_index(const Exponent& alpha, unsigned t) {
  Exponent full = alpha;
  full.push_back(t - total_degree(alpha));
  return full;
}

Polynomial basis_poly(const Exponent& alpha, unsigned t, std::size_t nvars) {
  if (alpha.size() != nvars) throw InputError("multi-index length does not match variable count");
  unsigned a = total_degree(alpha);
  if (a > t) {
    throw InputError("multi-index degree " + std::to_string(a) + " exceeds basis degree " +
                     std::to_string(t));
  }
  ExtRational scale = simplex_scale(nvars);
  ExtRational c{mpq_class(multinomial(alpha, t))};
  for (unsigned k = 0; k < t; ++k) c /= scale;
  Polynomial upper = Polynomial::constant(nvars, ExtRational::sqrt_of(nvars));
  for (std::size_t i = 0; i < nvars; ++i) upper -= Polynomial::variable(nvars, i);
  Polynomial p = upper.pow(t - a) * c;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (alpha[i] == 0) continue;
    Polynomial lower = Polynomial::variable(nvars, i) + Polynomial::constant(nvars, 1);
    p *= lower.pow(alpha[i]);
  }
  return p;
}

BernsteinExpansion to_bernstein(const SymPolyMatrix& f, unsigned t) {
  if (f.degree() > t) {
    throw InputError("Bernstein degree " + std::to_string(t) + " is below matrix degree " +
                     std::to_string(f.degree()));
  }
  std::size_t nvars = f.nvars();
  if (nvars == 0) throw InputError("Bernstein expansion needs at least one variable");
  std::vector<Exponent> idx = monomials_up_to(nvars, t);
  std::map<Exponent, std::size_t> pos;
  for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = k;
  auto conv = conversion_matrix(nvars, t);
  std::size_t l = f.size();
  BernsteinExpansion e;
  e.nvars = nvars;
  e.degree = t;
  e.size = l;
  for (const auto& alpha : idx) e.coeffs.emplace(alpha, RationalSymMatrix(l, l));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      const Polynomial& p = f(i, j);
      for (std::size_t row = 0; row < idx.size(); ++row) {
        ExtRational v;
        for (const auto& [beta, c] : p.terms()) {
          const ExtRational& w = (*conv)(row, pos.at(beta));
          if (!w.is_zero()) v += w * c;
        }
        RationalSymMatrix& m = e.coeffs.at(idx[row]);
        m(i, j) = v;
        m(j, i) = v;
      }
    }
  }
  return e;
}

BernsteinExpansion to_bernstein(const Polynomial& f, unsigned t) {
  return to_bernstein(SymPolyMatrix::scalar(f), t);
}

SymPolyMatrix from_bernstein(const BernsteinExpansion& e) {
  SymPolyMatrix out(e.size, e.nvars);
  for (const auto& [alpha, m] : e.coeffs) {
    if (m.is_zero()) continue;
    Polynomial b = basis_poly(alpha, e.degree, e.nvars);
    for (std::size_t i = 0; i < e.size; ++i) {
      for (std::size_t j = i; j < e.size; ++j) {
        if (m(i, j).is_zero()) continue;
        out.set(i, j, out(i, j) + b * m(i, j));
      }
    }
  }
  return out;
}

BernsteinExpansion elevate(const BernsteinExpansion& e, unsigned target_degree) {
  if (target_degree < e.degree) {
    throw InputError("cannot elevate from degree " + std::to_string(e.degree) + " down to " +
                     std::to_string(target_degree));
  }
  BernsteinExpansion cur = e;
  while (cur.degree < target_degree) {
    unsigned t1 = cur.degree + 1;
    BernsteinExpansion next;
    next.nvars = cur.nvars;
    next.degree = t1;
    next.size = cur.size;
    ExtRational inv_t1 = ExtRational(mpq_class(1, t1));
    for (const auto& beta : monomials_up_to(cur.nvars, t1)) {
      RationalSymMatrix acc(cur.size, cur.size);
      unsigned implicit = t1 - total_degree(beta);
      if (implicit > 0) acc += cur.coeffs.at(beta) * ExtRational(static_cast<long>(implicit));
      for (std::size_t i = 0; i < cur.nvars; ++i) {
        if (beta[i] == 0) continue;
        Exponent alpha = beta;
        alpha[i] -= 1;
        acc += cur.coeffs.at(alpha) * ExtRational(static_cast<long>(beta[i]));
      }
      acc *= inv_t1;
      next.coeffs.emplace(beta, std::move(acc));
    }
    cur = std::move(next);
  }
  return cur;
}

double bernstein_norm(const BernsteinExpansion& e) {
  double best = 0.0;
  for (const auto& [alpha, m] : e.coeffs) best = std::max(best, spectral_norm_symmetric(to_eigen(m)));
  return best;
}

double bernstein_norm(const SymPolyMatrix& f, unsigned t, double tol) {
  (void)tol;  // the symmetric eigensolver is accurate to machine precision here
  return bernstein_norm(to_bernstein(f, t));
}

double bernstein_norm(const Polynomial& f, unsigned t, double tol) {
  return bernstein_norm(SymPolyMatrix::scalar(f), t, tol);
}

double bernstein_norm(const SymPolyMatrix& f) { return bernstein_norm(f, f.degree()); }

double bernstein_norm(const Polynomial& f) { return bernstein_norm(f, f.degree()); }

std::string format_expansion(const BernsteinExpansion& e) {
  std::ostringstream out;
  out << "bernstein nvars " << e.nvars << " degree " << e.degree << " size " << e.size << "\n";
  for (const auto& [alpha, m] : e.coeffs) {
    out << "alpha";
    for (unsigned a : alpha) out << ' ' << a;
    out << " :";
    for (std::size_t i = 0; i < e.size; ++i) {
      for (std::size_t j = i; j < e.size; ++j) out << (i == 0 && j == 0 ? " " : " ; ") << m(i, j).to_string();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace pmi
