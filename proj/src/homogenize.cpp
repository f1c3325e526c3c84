#include "pmi/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "pmi/errors.hpp"
#include "pmi/numeric.hpp"

namespace pmi {

HomogenizedProblem lift_problem(const SymPolyMatrix& f, const SymPolyMatrix& g) {
  if (f.nvars() != g.nvars()) throw InputError("F and G have different variable counts");
  HomogenizedProblem p;
  p.nvars = f.nvars();
  p.f_degree = f.degree();
  p.g_degree = g.degree();
  p.d0 = 2 * ((p.g_degree + 1) / 2) - p.g_degree;
  p.f_tilde = f.homogenize(p.f_degree);
  SymPolyMatrix g_tilde = g.homogenize(p.g_degree);
  if (p.d0 == 0) {
    p.g_hat = g_tilde;
  } else {
    Exponent e(p.nvars + 1, 0);
    e[0] = p.d0;
    p.g_hat = g_tilde.scaled(Polynomial::monomial(e, 1));
  }
  p.sphere = squared_norm(p.nvars + 1) - Polynomial::constant(p.nvars + 1, 1);
  return p;
}

namespace {

double min_eig_at(const SymPolyMatrix& m, const std::vector<double>& x) {
  std::vector<double> vals = m.evaluate(x);
  auto l = static_cast<Eigen::Index>(m.size());
  Eigen::Map<Eigen::MatrixXd> mat(vals.data(), l, l);
  return min_eigenvalue_numeric(mat);
}

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

std::vector<std::vector<double>> sphere_samples(std::size_t dim, std::size_t count) {
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  const double pi = std::acos(-1.0);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      double a = 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
      pts.push_back({std::cos(a), std::sin(a)});
    }
  } else if (dim == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = golden * static_cast<double>(k);
      pts.push_back({z, r * std::cos(phi), r * std::sin(phi)});
    }
  } else {
    std::mt19937_64 rng(20240917);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<double> x(dim);
      for (double& v : x) v = nd(rng);
      normalize(x);
      pts.push_back(std::move(x));
    }
  }
  return pts;
}

}  // namespace

FtildeMinEstimate estimate_ftilde_min(const HomogenizedProblem& prob, std::size_t grid, unsigned refine_iters) {
  if (grid < 8) throw InputError("sphere grid must have at least 8 points");
  constexpr double kFeasTol = 1e-9;
  std::size_t dim = prob.nvars + 1;
  auto feasible = [&](const std::vector<double>& x) { return min_eig_at(prob.g_hat, x) >= -kFeasTol; };

  FtildeMinEstimate est;
  std::vector<std::pair<double, std::vector<double>>> ranked;
  for (auto& x : sphere_samples(dim, grid)) {
    ++est.samples;
    if (!feasible(x)) continue;
    ++est.feasible_samples;
    ranked.emplace_back(min_eig_at(prob.f_tilde, x), std::move(x));
  }
  if (ranked.empty()) throw EmptyFeasibleSample("no sphere sample satisfies the constraint");
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ranked.resize(std::min<std::size_t>(ranked.size(), 5));

  est.value = ranked.front().first;
  est.argmin = ranked.front().second;
  for (auto& [val, x] : ranked) {
    double step = 0.25;
    for (unsigned it = 0; it < refine_iters; ++it) {
      bool improved = false;
      for (std::size_t i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[i] += sign * step;
          normalize(y);
          if (!feasible(y)) continue;
          double v = min_eig_at(prob.f_tilde, y);
          if (v < val) {
            val = v;
            x = std::move(y);
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (val < est.value) {
      est.value = val;
      est.argmin = x;
    }
  }
  return est;
}

namespace {

// s^K q((1, x) / s) = even + s * odd with s = sqrt(1 + ||x||^2), for q in (x0, x).
struct ParitySplit {
  Polynomial even;
  Polynomial odd;
};

class Substituter {
 public:
  explicit Substituter(std::size_t n) : n_(n), lift_(Polynomial::constant(n, 1) + squared_norm(n)) {
    powers_.push_back(Polynomial::constant(n, 1));
  }

  ParitySplit split(const Polynomial& q, unsigned big_k) {
    ParitySplit out{Polynomial(n_), Polynomial(n_)};
    for (const auto& [e, c] : q.terms()) {
      unsigned deg = total_degree(e);
      if (deg > big_k) throw InternalError("substitution degree too small");
      Polynomial mono = Polynomial::monomial(Exponent(e.begin() + 1, e.end()), c);
      unsigned gap = big_k - deg;
      if (gap % 2 == 0) {
        out.even += mono * lift_power(gap / 2);
      } else {
        out.odd += mono * lift_power((gap - 1) / 2);
      }
    }
    return out;
  }

 private:
  const Polynomial& lift_power(unsigned k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * lift_);
    return powers_[k];
  }

  std::size_t n_;
  Polynomial lift_;
  std::vector<Polynomial> powers_;
};

// Re-expresses the vector-of-polynomials V (one entry per old basis index) in
// the monomial basis w: C(u, mu) = coefficient of w_mu in V[u].
ExtMatrix coefficient_matrix(const std::vector<Polynomial>& v, const std::vector<Exponent>& w) {
  std::map<Exponent, std::size_t> pos;
  for (std::size_t k = 0; k < w.size(); ++k) pos[w[k]] = k;
  ExtMatrix c(v.size(), w.size());
  for (std::size_t u = 0; u < v.size(); ++u) {
    for (const auto& [e, val] : v[u].terms()) c(u, pos.at(e)) = val;
  }
  return c;
}

ExtMatrix kron_identity(std::size_t l, const ExtMatrix& c) {
  ExtMatrix out(l * c.rows(), l * c.cols());
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < c.cols(); ++j) out(a * c.rows() + i, a * c.cols() + j) = c(i, j);
    }
  }
  return out;
}

// X_ab = sum_{u,v} a_u gram[(a,u),(b,v)] b_v.
PolyMatrix cross_term(const std::vector<Polynomial>& av, const RationalSymMatrix& gram,
                      const std::vector<Polynomial>& bv, std::size_t l, std::size_t n) {
  std::size_t nb = av.size();
  PolyMatrix x(l, l, n);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      for (std::size_t u = 0; u < nb; ++u) {
        if (av[u].is_zero()) continue;
        for (std::size_t v = 0; v < nb; ++v) {
          const ExtRational& c = gram(a * nb + u, b * nb + v);
          if (c.is_zero() || bv[v].is_zero()) continue;
          x(a, b) += av[u] * bv[v] * c;
        }
      }
    }
  }
  return x;
}

}  // namespace

DehomogenizedCertificate dehomogenize_certificate(const QMCertificate& cert, const HomogenizedProblem& prob,
                                                  const SymPolyMatrix& f, const SymPolyMatrix& g) {
  std::size_t n = prob.nvars;
  std::size_t l = cert.l;
  if (prob.f_degree % 2 != 0) throw InputError("dehomogenization requires an even degree of F");
  if (f.nvars() != n || g.nvars() != n) throw InputError("F or G has the wrong variable count");
  VerifyReport in_check = verify_certificate(prob.f_tilde, prob.g_hat, cert, CertMode::kExact, 0.0, {prob.sphere});
  if (!in_check.ok) {
    throw InputError("input certificate is not exact for the homogenized problem: " + in_check.failures.front());
  }
  unsigned g_deg = prob.g_hat.degree();
  unsigned big_k = std::max((in_check.term_degree + 1) / 2, prob.f_degree / 2);
  big_k = std::max(big_k, g_deg / 2);
  unsigned mult_k = big_k - g_deg / 2;

  Substituter sub(n);
  std::vector<Exponent> w = monomials_up_to(n, big_k);
  QMCertificate out;
  out.nvars = n;
  out.l = l;
  out.m = cert.m;
  out.mode = CertMode::kExact;
  PolyMatrix odd_total(l, l, n);

  for (const auto& blk : cert.sos) {
    std::vector<Polynomial> av;
    std::vector<Polynomial> bv;
    for (const auto& e : blk.basis) {
      ParitySplit sp = sub.split(Polynomial::monomial(e, 1), big_k);
      av.push_back(sp.even);
      bv.push_back(sp.odd);
    }
    std::vector<std::vector<Polynomial>> vectors = {av, bv};
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Polynomial> xb;
      Polynomial xj = Polynomial::variable(n, j);
      for (const auto& p : bv) xb.push_back(p * xj);
      vectors.push_back(std::move(xb));
    }
    RationalSymMatrix gram(l * w.size(), l * w.size());
    for (const auto& vec : vectors) {
      ExtMatrix c = kron_identity(l, coefficient_matrix(vec, w));
      gram += c.transpose() * blk.gram * c;
    }
    if (!gram.is_zero()) out.sos.push_back({w, gram});
    PolyMatrix x = cross_term(av, blk.gram, bv, l, n);
    odd_total += x;
    odd_total += x.transpose();
  }

  for (const auto& t : cert.multipliers) {
    PolyMatrix p1(t.p.rows(), t.p.cols(), n);
    PolyMatrix p2(t.p.rows(), t.p.cols(), n);
    for (std::size_t i = 0; i < t.p.rows(); ++i) {
      for (std::size_t j = 0; j < t.p.cols(); ++j) {
        ParitySplit sp = sub.split(t.p(i, j), mult_k);
        p1(i, j) = sp.even;
        p2(i, j) = sp.odd;
      }
    }
    PolyMatrix gp2 = g.matrix() * p2;
    PolyMatrix cross = p1.transpose() * gp2;
    cross *= t.weight;
    odd_total += cross;
    odd_total += cross.transpose();
    if (!p1.is_zero()) out.multipliers.push_back({t.weight, p1});
    if (!p2.is_zero()) {
      out.multipliers.push_back({t.weight, p2});
      for (std::size_t j = 0; j < n; ++j) {
        PolyMatrix xp = p2;
        xp *= Polynomial::variable(n, j);
        out.multipliers.push_back({t.weight, xp});
      }
    }
  }
  for (const auto& t : cert.ideal) {
    if (t.generator != prob.sphere) throw InputError("ideal term generator is not the sphere constraint");
  }
  if (!odd_total.is_zero()) throw OddPartNonzero("odd part of the substituted certificate does not vanish");

  DehomogenizedCertificate res;
  res.k = big_k - prob.f_degree / 2;
  Polynomial lift = Polynomial::constant(n, 1) + squared_norm(n);
  res.target = f.scaled(lift.pow(res.k));
  out.degree = 2 * big_k;
  res.certificate = std::move(out);
  VerifyReport check = verify_certificate(res.target, g, res.certificate, CertMode::kExact);
  if (!check.ok) throw InternalError("dehomogenized certificate failed verification: " + check.failures.front());
  return res;
}

SymPolyMatrix perturb_for_nonneg(const SymPolyMatrix& f, const ExtRational& eps) {
  if (eps.sign() <= 0) throw InputError("epsilon must be positive");
  std::size_t n = f.nvars();
  unsigned e = (f.degree() + 2) / 2;
  Polynomial lift = Polynomial::constant(n, 1) + squared_norm(n);
  SymPolyMatrix id = SymPolyMatrix::identity(f.size(), n);
  return f + id.scaled(lift.pow(e) * eps);
}

}  // namespace pmi
