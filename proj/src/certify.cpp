#include "pmi/certify.hpp"

#include <map>

#include "pmi/bernstein.hpp"
#include "pmi/errors.hpp"

namespace pmi {

namespace {

struct Square {
  ExtRational w;
  Polynomial q;
};

// sum w q^2 + h * sum w q^2, with h = 1 - ||x||^2.
struct BallModuleElement {
  std::vector<Square> plain;
  std::vector<Square> times_h;
};

unsigned max_degree(const std::vector<Square>& list) {
  unsigned d = 0;
  for (const auto& s : list) d = std::max(d, s.q.degree());
  return d;
}

RationalSymMatrix gram_of(const std::vector<Square>& list, const std::vector<Exponent>& basis) {
  std::map<Exponent, std::size_t> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k]] = k;
  RationalSymMatrix gram(basis.size(), basis.size());
  for (const auto& s : list) {
    std::vector<std::pair<std::size_t, ExtRational>> c;
    for (const auto& [e, v] : s.q.terms()) c.emplace_back(pos.at(e), v);
    for (const auto& [i, ci] : c) {
      for (const auto& [j, cj] : c) gram(i, j) += s.w * ci * cj;
    }
  }
  return gram;
}

// Rewrites a list of weighted squares with at most |basis| terms via exact LDL^T.
std::vector<Square> compress(const std::vector<Square>& list, std::size_t nvars) {
  if (list.empty()) return {};
  std::vector<Exponent> basis = monomials_up_to(nvars, max_degree(list));
  RationalSymMatrix gram = gram_of(list, basis);
  LdltResult f = ldlt_exact(gram);
  if (!f.psd) throw InternalError("weighted square list has an indefinite Gram matrix");
  std::vector<Square> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (f.diag[k].is_zero()) continue;
    Polynomial q(nvars);
    for (std::size_t i = k; i < basis.size(); ++i) {
      if (!f.lower(i, k).is_zero()) q.add_term(basis[f.perm[i]], f.lower(i, k));
    }
    out.push_back({f.diag[k], q});
  }
  return out;
}

void multiply_into(const std::vector<Square>& a, const std::vector<Square>& b, const Polynomial* fold,
                   std::vector<Square>& out) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      Polynomial q = x.q * y.q;
      if (fold) q *= *fold;
      out.push_back({x.w * y.w, std::move(q)});
    }
  }
}

BallModuleElement multiply(const BallModuleElement& a, const BallModuleElement& b, const Polynomial& h,
                           std::size_t nvars) {
  BallModuleElement out;
  multiply_into(a.plain, b.plain, nullptr, out.plain);
  multiply_into(a.times_h, b.times_h, &h, out.plain);  // h^2 folded into the square
  multiply_into(a.plain, b.times_h, nullptr, out.times_h);
  multiply_into(a.times_h, b.plain, nullptr, out.times_h);
  out.plain = compress(out.plain, nvars);
  out.times_h = compress(out.times_h, nvars);
  return out;
}

BallModuleElement facet_element(FacetKind kind, std::size_t index, std::size_t nvars) {
  BallModuleElement e;
  ExtRational half(mpq_class(1, 2));
  Polynomial one = Polynomial::constant(nvars, 1);
  if (kind == FacetKind::kLower) {
    for (std::size_t j = 0; j < nvars; ++j) {
      Polynomial xj = Polynomial::variable(nvars, j);
      e.plain.push_back({half, j == index ? one + xj : xj});
    }
    e.times_h.push_back({half, one});
  } else {
    ExtRational rt = ExtRational::sqrt_of(nvars);
    ExtRational w = rt * half;
    ExtRational shift = rt.inverse();
    for (std::size_t j = 0; j < nvars; ++j) {
      e.plain.push_back({w, Polynomial::variable(nvars, j) - Polynomial::constant(nvars, shift)});
    }
    e.times_h.push_back({w, one});
  }
  return e;
}

QMCertificate element_certificate(const BallModuleElement& e, std::size_t nvars) {
  QMCertificate c;
  c.nvars = nvars;
  c.l = 1;
  c.m = 1;
  std::vector<Square> all = e.plain;
  if (!all.empty()) {
    std::vector<Exponent> basis = monomials_up_to(nvars, max_degree(all));
    c.sos.push_back({basis, gram_of(all, basis)});
  }
  for (const auto& s : e.times_h) {
    PolyMatrix p(1, 1, nvars);
    p(0, 0) = s.q;
    c.multipliers.push_back({s.w, p});
  }
  SymPolyMatrix g = SymPolyMatrix::scalar(Polynomial::constant(nvars, 1) - squared_norm(nvars));
  c.degree = certificate_term_degree(c, g);
  return c;
}

mpz_class factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

// Adds F_alpha kron gram into acc, with row index a * N + u.
void add_kron(RationalSymMatrix& acc, const RationalSymMatrix& fa, const RationalSymMatrix& gram) {
  std::size_t l = fa.rows();
  std::size_t nb = gram.rows();
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      if (fa(a, b).is_zero()) continue;
      for (std::size_t u = 0; u < nb; ++u) {
        for (std::size_t v = 0; v < nb; ++v) {
          if (!gram(u, v).is_zero()) acc(a * nb + u, b * nb + v) += fa(a, b) * gram(u, v);
        }
      }
    }
  }
}

}  // namespace

Polynomial facet_polynomial(FacetKind kind, std::size_t index, std::size_t nvars) {
  if (nvars == 0) throw InputError("facet needs at least one variable");
  if (kind == FacetKind::kLower) {
    if (index >= nvars) throw InputError("facet index out of range");
    return Polynomial::constant(nvars, 1) + Polynomial::variable(nvars, index);
  }
  Polynomial p = Polynomial::constant(nvars, ExtRational::sqrt_of(nvars));
  for (std::size_t j = 0; j < nvars; ++j) p -= Polynomial::variable(nvars, j);
  return p;
}

QMCertificate facet_certificate(FacetKind kind, std::size_t index, std::size_t nvars) {
  if (nvars == 0) throw InputError("facet needs at least one variable");
  if (kind == FacetKind::kLower && index >= nvars) throw InputError("facet index out of range");
  return element_certificate(facet_element(kind, index, nvars), nvars);
}

std::optional<QMCertificate> trivial_ball_witness(const SymPolyMatrix& g) {
  std::size_t n = g.nvars();
  Polynomial h = Polynomial::constant(n, 1) - squared_norm(n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g(i, i) != h) continue;
    QMCertificate c;
    c.nvars = n;
    c.l = 1;
    c.m = g.size();
    c.degree = 2;
    c.multipliers.push_back({ExtRational(1), PolyMatrix::unit_column(g.size(), i, n)});
    return c;
  }
  return std::nullopt;
}

AssembleResult assemble_simplex_putinar(const SymPolyMatrix& f, const SymPolyMatrix& g,
                                        const QMCertificate& ball_witness, const PolyaOptions& options) {
  std::size_t n = f.nvars();
  std::size_t l = f.size();
  if (g.nvars() != n) throw InputError("F and G have different variable counts");
  Polynomial h = Polynomial::constant(n, 1) - squared_norm(n);
  if (ball_witness.l != 1) throw InputError("ball witness must be a scalar certificate");
  if (!ball_witness.ideal.empty()) throw InputError("ball witness may not use equality terms");
  VerifyReport ball_check = verify_certificate(SymPolyMatrix::scalar(h), g, ball_witness, CertMode::kExact);
  if (!ball_check.ok) {
    throw InputError("ball witness does not verify: " + ball_check.failures.front());
  }

  PolyaCertificate polya = polya_certificate(f, options);
  unsigned t = polya.degree;
  std::vector<Exponent> zt = monomials_up_to(n, t);
  std::size_t nt = zt.size();
  RationalSymMatrix s_total(l * nt, l * nt);
  RationalSymMatrix u_total(l * nt, l * nt);

  BallModuleElement unit;
  unit.plain.push_back({ExtRational(1), Polynomial::constant(n, 1)});
  BallModuleElement upper = facet_element(FacetKind::kUpperSum, 0, n);
  std::vector<BallModuleElement> lower;
  for (std::size_t i = 0; i < n; ++i) lower.push_back(facet_element(FacetKind::kLower, i, n));
  // Powers of each facet element, memoized by exponent.
  std::vector<std::vector<BallModuleElement>> lower_pow(n, {unit});
  std::vector<BallModuleElement> upper_pow = {unit};
  auto power = [&](std::vector<BallModuleElement>& memo, const BallModuleElement& base, unsigned k) {
    while (memo.size() <= k) memo.push_back(multiply(memo.back(), base, h, n));
    return memo[k];
  };

  ExtRational scale_t = 1;
  for (unsigned k = 0; k < t; ++k) scale_t /= simplex_scale(n);
  for (const auto& [alpha, fa] : polya.expansion.coeffs) {
    unsigned rest = t - total_degree(alpha);
    BallModuleElement e = power(upper_pow, upper, rest);
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] > 0) e = multiply(e, power(lower_pow[i], lower[i], alpha[i]), h, n);
    }
    mpz_class denom = factorial(rest);
    for (unsigned a : alpha) denom *= factorial(a);
    ExtRational c = ExtRational(mpq_class(factorial(t), denom)) * scale_t;
    for (auto& s : e.plain) s.w *= c;
    for (auto& s : e.times_h) s.w *= c;
    add_kron(s_total, fa, gram_of(e.plain, zt));
    add_kron(u_total, fa, gram_of(e.times_h, zt));
  }

  QMCertificate cert;
  cert.nvars = n;
  cert.l = l;
  cert.m = g.size();
  cert.mode = CertMode::kExact;
  if (!s_total.is_zero()) cert.sos.push_back({zt, s_total});

  if (!u_total.is_zero()) {
    // h * U(x): SOS parts of the ball witness multiply U as a Kronecker product
    // re-indexed onto a monomial basis; multiplier parts use the LDL^T columns of U.
    for (const auto& blk : ball_witness.sos) {
      unsigned top = 0;
      for (const auto& e : blk.basis) top = std::max(top, total_degree(e));
      std::vector<Exponent> w = monomials_up_to(n, t + top);
      std::map<Exponent, std::size_t> pos;
      for (std::size_t k = 0; k < w.size(); ++k) pos[w[k]] = k;
      std::size_t nw = w.size();
      std::size_t nb = blk.basis.size();
      std::vector<std::vector<std::size_t>> mu(nt, std::vector<std::size_t>(nb));
      for (std::size_t u = 0; u < nt; ++u) {
        for (std::size_t v = 0; v < nb; ++v) {
          Exponent e(n);
          for (std::size_t i = 0; i < n; ++i) e[i] = zt[u][i] + blk.basis[v][i];
          mu[u][v] = pos.at(e);
        }
      }
      RationalSymMatrix gram(l * nw, l * nw);
      for (std::size_t a = 0; a < l; ++a) {
        for (std::size_t b = 0; b < l; ++b) {
          for (std::size_t u = 0; u < nt; ++u) {
            for (std::size_t u2 = 0; u2 < nt; ++u2) {
              const ExtRational& uval = u_total(a * nt + u, b * nt + u2);
              if (uval.is_zero()) continue;
              for (std::size_t v = 0; v < nb; ++v) {
                for (std::size_t v2 = 0; v2 < nb; ++v2) {
                  if (blk.gram(v, v2).is_zero()) continue;
                  gram(a * nw + mu[u][v], b * nw + mu[u2][v2]) += uval * blk.gram(v, v2);
                }
              }
            }
          }
        }
      }
      cert.sos.push_back({w, gram});
    }
    if (!ball_witness.multipliers.empty()) {
      LdltResult fu = ldlt_exact(u_total);
      if (!fu.psd) throw InternalError("ball-multiplied Gram matrix is not PSD");
      for (std::size_t k = 0; k < l * nt; ++k) {
        if (fu.diag[k].is_zero()) continue;
        PolyMatrix vt(1, l, n);  // v_k^T
        for (std::size_t i = k; i < l * nt; ++i) {
          const ExtRational& c = fu.lower(i, k);
          if (c.is_zero()) continue;
          std::size_t idx = fu.perm[i];
          vt(0, idx / nt).add_term(zt[idx % nt], c);
        }
        for (const auto& bm : ball_witness.multipliers) {
          cert.multipliers.push_back({bm.weight * fu.diag[k], bm.p * vt});
        }
      }
    }
  }
  cert.degree = certificate_term_degree(cert, g);

  VerifyReport check = verify_certificate(f, g, cert, CertMode::kExact);
  if (!check.ok) throw InternalError("assembled certificate failed verification: " + check.failures.front());

  AssembleResult res;
  res.certificate = std::move(cert);
  res.polya_degree = t;
  res.ball_degree = ball_witness.degree;
  res.degree = res.certificate.degree;
  return res;
}

}  // namespace pmi
