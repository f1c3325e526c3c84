#include "pmi/polya.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pmi/errors.hpp"
#include "pmi/numeric.hpp"

namespace pmi {

namespace {

using CoeffMap = std::map<Exponent, RationalSymMatrix, BasisOrder>;

mpz_class factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

mpz_class index_factorial(const Exponent& a) {
  mpz_class f = 1;
  for (unsigned v : a) f *= factorial(v);
  return f;
}

// Homogeneous coefficient map of fh: every exponent of degree `degree` present.
CoeffMap coefficient_map(const SymPolyMatrix& fh, unsigned degree) {
  std::size_t l = fh.size();
  CoeffMap out;
  for (const auto& e : monomials_of_degree(fh.nvars(), degree)) out.emplace(e, RationalSymMatrix(l, l));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      for (const auto& [e, c] : fh(i, j).terms()) {
        auto& m = out.at(e);
        m(i, j) = c;
        m(j, i) = c;
      }
    }
  }
  return out;
}

// Multiplies a homogeneous coefficient map by y_1 + ... + y_N.
CoeffMap times_simplex_sum(const CoeffMap& in, std::size_t nvars, unsigned degree, std::size_t l) {
  CoeffMap out;
  for (const auto& beta : monomials_of_degree(nvars, degree + 1)) {
    RationalSymMatrix acc(l, l);
    for (std::size_t i = 0; i < nvars; ++i) {
      if (beta[i] == 0) continue;
      Exponent a = beta;
      a[i] -= 1;
      acc += in.at(a);
    }
    out.emplace(beta, std::move(acc));
  }
  return out;
}

RationalSymMatrix scaled(const RationalSymMatrix& m, const Exponent& a, unsigned total) {
  return m * ExtRational(mpq_class(index_factorial(a), factorial(total)));
}

void require_homogeneous(const SymPolyMatrix& fh) {
  unsigned d = fh.degree();
  for (std::size_t i = 0; i < fh.size(); ++i) {
    for (std::size_t j = i; j < fh.size(); ++j) {
      const Polynomial& p = fh(i, j);
      if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != d)) {
        throw InputError("matrix entries are not homogeneous of a common degree");
      }
    }
  }
}

}  // namespace

unsigned long polya_bound(unsigned d, double norm_b, double fmin) {
  if (!(fmin > 0.0)) throw InputError("fmin must be positive");
  double v = static_cast<double>(d) * (static_cast<double>(d) - 1.0) * norm_b / (2.0 * fmin) - d;
  if (v < 0.0) return 0;
  return static_cast<unsigned long>(std::floor(v)) + 1;
}

std::map<Exponent, RationalSymMatrix, BasisOrder> scherer_hol_step(const SymPolyMatrix& fh, unsigned k) {
  require_homogeneous(fh);
  unsigned d = fh.degree();
  CoeffMap cur = coefficient_map(fh, d);
  for (unsigned s = 0; s < k; ++s) cur = times_simplex_sum(cur, fh.nvars(), d + s, fh.size());
  CoeffMap out;
  for (const auto& [a, m] : cur) out.emplace(a, scaled(m, a, d + k));
  return out;
}

bool coefficient_is_pd(const RationalSymMatrix& m, PdMode mode, double tol, double* margin) {
  if (mode == PdMode::kExactMinors) {
    double smallest = INFINITY;
    bool ok = true;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
      ExtMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
      }
      ExtRational det = determinant(sub);
      smallest = std::min(smallest, det.to_double());
      if (det.sign() <= 0) ok = false;
    }
    if (margin) *margin = smallest;
    return ok;
  }
  double lam = min_eigenvalue_numeric(to_eigen(m));
  if (margin) *margin = lam;
  return lam > tol;
}

PolyaCertificate polya_certificate(const SymPolyMatrix& f, const PolyaOptions& options) {
  std::size_t n = f.nvars();
  std::size_t l = f.size();
  if (n == 0) throw InputError("Polya certificate needs at least one variable");
  unsigned d = f.degree();
  if (options.max_degree < d) {
    throw InputError("max degree " + std::to_string(options.max_degree) + " is below deg F = " +
                     std::to_string(d));
  }
  PolyaCertificate cert;
  cert.input_degree = d;
  cert.mode = l <= kMaxExactMinorSize ? PdMode::kExactMinors : PdMode::kNumeric;

  SimplexMinEstimate est = estimate_fmin_simplex(f, options.grid_resolution);
  RationalSymMatrix at_min = f.evaluate(est.argmin);
  if (!psd_ldlt(at_min, true)) {
    throw NotPositiveDefiniteOnSimplex("matrix is not positive definite at a simplex point", est.argmin,
                                       est.grid_min);
  }

  BernsteinExpansion base = to_bernstein(f, d);
  cert.norm_b = bernstein_norm(base);
  cert.fmin_estimate = est.grid_min;
  if (est.grid_min > 0.0) cert.bound_k = polya_bound(d, cert.norm_b, est.grid_min);

  // Homogeneous form on the standard simplex: coefficient of y^(alpha, d - |alpha|)
  // is F_alpha * d! / alpha!.
  CoeffMap cur;
  for (const auto& [alpha, m] : base.coeffs) {
    Exponent full = extend_index(alpha, d);
    cur.emplace(full, m * ExtRational(mpq_class(factorial(d), index_factorial(full))));
  }
  for (unsigned t = d; t <= options.max_degree; ++t) {
    if (t > d) cur = times_simplex_sum(cur, n + 1, t - 1, l);
    bool ok = true;
    std::vector<double> margins;
    margins.reserve(cur.size());
    CoeffMap scaled_map;
    for (const auto& [a, m] : cur) {
      RationalSymMatrix c = scaled(m, a, t);
      double margin = 0.0;
      if (!coefficient_is_pd(c, cert.mode, options.numeric_tol, &margin)) {
        ok = false;
        break;
      }
      scaled_map.emplace(a, std::move(c));
    }
    if (!ok) continue;
    cert.degree = t;
    cert.expansion.nvars = n;
    cert.expansion.degree = t;
    cert.expansion.size = l;
    for (auto& [a, m] : scaled_map) {
      cert.expansion.coeffs.emplace(Exponent(a.begin(), a.end() - 1), std::move(m));
    }
    for (const auto& [alpha, m] : cert.expansion.coeffs) {
      double margin = 0.0;
      coefficient_is_pd(m, cert.mode, options.numeric_tol, &margin);
      cert.margins.push_back(margin);
    }
    return cert;
  }
  throw NotPositiveDefiniteOnSimplex(
      "no positive definite Bernstein expansion up to degree " + std::to_string(options.max_degree),
      std::nullopt, est.grid_min);
}

std::string format_polya_certificate(const PolyaCertificate& c) {
  std::ostringstream out;
  out << "polya degree " << c.degree << " input_degree " << c.input_degree << " mode "
      << (c.mode == PdMode::kExactMinors ? "exact" : "numeric") << "\n";
  out << "norm_b " << c.norm_b << " fmin_estimate " << c.fmin_estimate << " bound_k " << c.bound_k << "\n";
  out << "margins";
  for (double m : c.margins) out << ' ' << m;
  out << "\n" << format_expansion(c.expansion);
  return out.str();
}

}  // namespace pmi
