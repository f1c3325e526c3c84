#include "pmi/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "pmi/errors.hpp"

namespace pmi {

namespace {

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

struct NumConstraint {
  // full symmetric entries per block
  std::vector<std::vector<std::tuple<int, int, double>>> entries;
};

struct NumericSDP {
  std::vector<int> sizes;
  NumConstraint c;
  std::vector<NumConstraint> a;
  Eigen::VectorXd b;
};

NumConstraint to_numeric(const std::vector<SparseEntry>& es, std::size_t nblocks) {
  NumConstraint r;
  r.entries.resize(nblocks);
  for (const auto& e : es) {
    double v = e.value.to_double();
    r.entries[e.block].emplace_back(int(e.i), int(e.j), v);
    if (e.i != e.j) r.entries[e.block].emplace_back(int(e.j), int(e.i), v);
  }
  return r;
}

using Blocks = std::vector<Eigen::MatrixXd>;

double inner(const NumConstraint& a, const Blocks& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.entries.size(); ++k)
    for (const auto& [i, j, v] : a.entries[k]) s += v * x[k](i, j);
  return s;
}

double inner(const Blocks& x, const Blocks& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k].array() * y[k].array()).sum();
  return s;
}

void add_scaled(Blocks& out, const NumConstraint& a, double w) {
  for (std::size_t k = 0; k < a.entries.size(); ++k)
    for (const auto& [i, j, v] : a.entries[k]) out[k](i, j) += w * v;
}

Blocks zeros(const std::vector<int>& sizes) {
  Blocks r;
  for (int n : sizes) r.push_back(Eigen::MatrixXd::Zero(n, n));
  return r;
}

Blocks scaled_identity(const std::vector<int>& sizes, double s) {
  Blocks r;
  for (int n : sizes) r.push_back(s * Eigen::MatrixXd::Identity(n, n));
  return r;
}

double frob(const Blocks& x) { return std::sqrt(inner(x, x)); }

double frob(const NumConstraint& a) {
  double s = 0.0;
  for (const auto& blk : a.entries)
    for (const auto& [i, j, v] : blk) s += v * v;
  return std::sqrt(s);
}

// Largest alpha in (0, inf) with x + alpha dx PSD, +inf if unbounded.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].rows() == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(l.rows(), l.cols()));
    Eigen::MatrixXd m = -li * dx[k] * li.transpose();
    m = 0.5 * (m + m.transpose());
    double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (lmax > 0) alpha = std::min(alpha, 1.0 / lmax);
  }
  return alpha;
}

}  // namespace

SDPProblem build_relaxation(const Polynomial& f, const SymPolyMatrix& g, unsigned k) {
  if (f.nvars() != g.nvars()) throw InputError("f and G must have the same number of variables");
  if (g.size() == 0) throw InputError("G must be nonempty");
  unsigned dg = g.degree();
  if (2 * k < f.degree()) throw InputError("relaxation order too small: 2k < deg f");
  if (2 * k < dg) throw InputError("relaxation order too small: 2k < deg G");
  SDPProblem p;
  p.nvars = f.nvars();
  p.order = k;
  p.f = f;
  p.g = g;
  std::size_t n = f.nvars();
  std::size_t m = g.size();
  unsigned k1 = (2 * k - dg) / 2;
  p.basis0 = monomials_up_to(n, k);
  p.basis1 = monomials_up_to(n, k1);
  p.monomials = monomials_up_to(n, 2 * k);
  std::size_t n0 = p.basis0.size();
  std::size_t n1 = p.basis1.size();
  p.block_sizes = {n0, m * n1};
  std::map<Exponent, std::size_t> index;
  for (std::size_t c = 0; c < p.monomials.size(); ++c) index[p.monomials[c]] = c;

  // (constraint, block, i, j) -> value, i <= j
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, ExtRational> acc;
  for (std::size_t u = 0; u < n0; ++u)
    for (std::size_t v = u; v < n0; ++v) acc[{index.at(add_exp(p.basis0[u], p.basis0[v])), 0, u, v}] += 1;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t u = 0; u < n1; ++u)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t v = 0; v < n1; ++v) {
          std::size_t pi = a * n1 + u, qi = b * n1 + v;
          if (pi > qi) continue;
          Exponent uv = add_exp(p.basis1[u], p.basis1[v]);
          for (const auto& [e, c] : g(a, b).terms()) acc[{index.at(add_exp(e, uv)), 1, pi, qi}] += c;
        }
  p.constraints.assign(p.monomials.size(), {});
  for (const auto& [key, val] : acc) {
    if (val.is_zero()) continue;
    auto [c, blk, i, j] = key;
    p.constraints[c].push_back({blk, i, j, val});
  }
  p.rhs.reserve(p.monomials.size());
  for (const auto& e : p.monomials) p.rhs.push_back(f.coefficient(e));
  return p;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

RelaxResult solve_sdp(const SDPProblem& p, const SolveOptions& options) {
  NumericSDP s;
  for (std::size_t n : p.block_sizes) s.sizes.push_back(int(n));
  std::size_t nb = s.sizes.size();
  std::size_t total = 0;
  for (int n : s.sizes) total += std::size_t(n);
  if (total > 200) throw InputError("relaxation too large: total block size exceeds 200");
  std::size_t const_index = 0;  // constant monomial is first in basis order
  s.c = to_numeric(p.constraints[const_index], nb);
  std::vector<double> bvals;
  for (std::size_t c = 0; c < p.constraints.size(); ++c) {
    if (c == const_index) continue;
    s.a.push_back(to_numeric(p.constraints[c], nb));
    bvals.push_back(p.rhs[c].to_double());
  }
  std::size_t nc = s.a.size();
  s.b = Eigen::VectorXd::Map(bvals.data(), Eigen::Index(nc));
  double f0 = p.rhs[const_index].to_double();

  double bmax = 0.0, amax = frob(s.c);
  for (std::size_t j = 0; j < nc; ++j) {
    bmax = std::max(bmax, (1 + std::abs(s.b[j])) / (1 + frob(s.a[j])));
    amax = std::max(amax, frob(s.a[j]));
  }
  double sqn = std::sqrt(double(total));
  double xi = std::max({10.0, sqn, sqn * bmax});
  double eta = std::max({10.0, sqn, amax});
  Blocks x = scaled_identity(s.sizes, xi);
  Blocks z = scaled_identity(s.sizes, eta);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(Eigen::Index(nc));
  Blocks cmat = zeros(s.sizes);
  add_scaled(cmat, s.c, 1.0);
  double norm_b = s.b.norm();
  double norm_c = frob(cmat);

  RelaxResult r;
  auto residuals = [&](Eigen::VectorXd& rp, Blocks& rd) {
    rp.resize(Eigen::Index(nc));
    for (std::size_t j = 0; j < nc; ++j) rp[j] = s.b[j] - inner(s.a[j], x);
    rd = cmat;
    for (std::size_t k = 0; k < nb; ++k) rd[k] -= z[k];
    for (std::size_t j = 0; j < nc; ++j) add_scaled(rd, s.a[j], -y[j]);
  };
  auto record = [&](const Eigen::VectorXd& rp, const Blocks& rd) {
    double pobj = inner(cmat, x);
    double dobj = s.b.dot(y);
    r.primal_residual = rp.norm() / (1 + norm_b);
    r.dual_residual = frob(rd) / (1 + norm_c);
    r.gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    r.gamma = f0 - pobj;
    r.blocks = x;
  };

  for (unsigned it = 0; it < options.max_iter; ++it) {
    Eigen::VectorXd rp;
    Blocks rd;
    residuals(rp, rd);
    record(rp, rd);
    r.iterations = it;
    if (r.primal_residual < options.tol && r.dual_residual < options.tol && r.gap < options.tol) {
      r.status = SolveStatus::kOptimal;
      return r;
    }
    double xnorm = frob(x);
    if (xnorm > 1e12 || s.b.dot(y) > 1e12 * (1 + std::abs(inner(cmat, x)))) {
      r.status = SolveStatus::kInfeasible;
      return r;
    }

    Blocks zinv;
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::MatrixXd zi = z[k].rows() ? Eigen::MatrixXd(z[k].llt().solve(Eigen::MatrixXd::Identity(z[k].rows(), z[k].cols())))
                                      : Eigen::MatrixXd();
      zinv.push_back(0.5 * (zi + zi.transpose()));
    }
    // Schur complement M_ij = <A_i, X A_j Z^-1>
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(Eigen::Index(nc), Eigen::Index(nc));
    for (std::size_t j = 0; j < nc; ++j) {
      Blocks w = zeros(s.sizes);
      for (std::size_t k = 0; k < nb; ++k) {
        if (s.a[j].entries[k].empty()) continue;
        Eigen::MatrixXd xa = Eigen::MatrixXd::Zero(s.sizes[k], s.sizes[k]);
        for (const auto& [pi, qi, v] : s.a[j].entries[k]) xa.col(qi) += v * x[k].col(pi);
        w[k] = xa * zinv[k];
      }
      for (std::size_t i = 0; i < nc; ++i) schur(Eigen::Index(i), Eigen::Index(j)) = inner(s.a[i], w);
    }
    schur = 0.5 * (schur + schur.transpose());
    Eigen::LDLT<Eigen::MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) break;

    double mu = inner(x, z) / double(total);
    // Direction for a target X Z = sigma mu I - corr, corr the second-order term.
    auto direction = [&](double sigma, const Blocks* dxa, const Blocks* dza, Blocks& dx, Blocks& dz, Eigen::VectorXd& dy) {
      Blocks rhs;  // sigma mu Z^-1 - X - corr Z^-1 - X Rd Z^-1
      for (std::size_t k = 0; k < nb; ++k) {
        Eigen::MatrixXd t = sigma * mu * zinv[k] - x[k] - x[k] * rd[k] * zinv[k];
        if (dxa) t -= (*dxa)[k] * (*dza)[k] * zinv[k];
        rhs.push_back(t);
      }
      Eigen::VectorXd h = Eigen::VectorXd::Zero(Eigen::Index(nc));
      for (std::size_t j = 0; j < nc; ++j) h[j] = rp[j] - inner(s.a[j], rhs);
      dy = ldlt.solve(h);
      dz = rd;
      for (std::size_t j = 0; j < nc; ++j) add_scaled(dz, s.a[j], -dy[j]);
      dx.clear();
      for (std::size_t k = 0; k < nb; ++k) {
        Eigen::MatrixXd t = rhs[k] + x[k] * (rd[k] - dz[k]) * zinv[k];
        dx.push_back(0.5 * (t + t.transpose()));
      }
    };
    Blocks dxa, dza;
    Eigen::VectorXd dya;
    direction(0.0, nullptr, nullptr, dxa, dza, dya);
    double ap = std::min(1.0, max_step(x, dxa));
    double ad = std::min(1.0, max_step(z, dza));
    Blocks xa = x, za = z;
    for (std::size_t k = 0; k < nb; ++k) {
      xa[k] += ap * dxa[k];
      za[k] += ad * dza[k];
    }
    double mu_aff = inner(xa, za) / double(total);
    double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3.0);
    sigma = std::min(1.0, sigma);
    Blocks dx, dz;
    Eigen::VectorXd dy;
    direction(sigma, &dxa, &dza, dx, dz, dy);
    const double tau = 0.95;
    ap = std::min(1.0, tau * max_step(x, dx));
    ad = std::min(1.0, tau * max_step(z, dz));
    if (ap < 1e-12 && ad < 1e-12) break;
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] += ap * dx[k];
      z[k] += ad * dz[k];
      x[k] = 0.5 * (x[k] + x[k].transpose());
      z[k] = 0.5 * (z[k] + z[k].transpose());
    }
    y += ad * dy;
  }
  Eigen::VectorXd rp;
  Blocks rd;
  residuals(rp, rd);
  record(rp, rd);
  r.status = (r.primal_residual < options.tol && r.dual_residual < options.tol && r.gap < options.tol)
                 ? SolveStatus::kOptimal
                 : SolveStatus::kMaxIterations;
  return r;
}

ExtractedCertificate extract_certificate(const RelaxResult& r, const SDPProblem& p) {
  if (r.blocks.size() != p.block_sizes.size()) throw InputError("result does not match the problem");
  std::size_t n = p.nvars;
  std::size_t m = p.g.size();
  std::size_t n0 = p.basis0.size();
  std::size_t n1 = p.basis1.size();
  const Eigen::MatrixXd& q0 = r.blocks[0];
  const Eigen::MatrixXd& q1 = r.blocks[1];
  double scale = 1.0 + std::max(q0.cwiseAbs().maxCoeff(), q1.size() ? q1.cwiseAbs().maxCoeff() : 0.0);
  double drop = 1e-9 * scale;

  QMCertificate cert;
  cert.nvars = n;
  cert.l = 1;
  cert.m = m;
  cert.degree = 2 * p.order;
  cert.mode = CertMode::kNumeric;

  Polynomial matched(n);
  if (q1.size()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (q1 + q1.transpose()));
    for (Eigen::Index c = q1.cols() - 1; c >= 0; --c) {
      double lambda = es.eigenvalues()[c];
      if (lambda <= drop) continue;
      PolyMatrix pm(m, 1, n);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t u = 0; u < n1; ++u) {
          double v = es.eigenvectors()(Eigen::Index(a * n1 + u), c);
          if (std::abs(v) < 1e-14) continue;
          pm(a, 0).add_term(p.basis1[u], rational_from_double(v));
        }
      MultiplierTerm t{ExtRational(rational_from_double(lambda)), pm};
      matched += congruence(t.p, p.g)(0, 0) * t.weight;
      cert.multipliers.push_back(std::move(t));
    }
  }

  RationalSymMatrix gram(n0, n0);
  for (std::size_t u = 0; u < n0; ++u)
    for (std::size_t v = u; v < n0; ++v) {
      double val = 0.5 * (q0(Eigen::Index(u), Eigen::Index(v)) + q0(Eigen::Index(v), Eigen::Index(u)));
      if (std::abs(val) < drop) val = 0.0;
      gram(u, v) = rational_from_double(val);
      gram(v, u) = gram(u, v);
    }
  for (std::size_t u = 0; u < n0; ++u)
    for (std::size_t v = 0; v < n0; ++v)
      if (!gram(u, v).is_zero()) matched.add_term(add_exp(p.basis0[u], p.basis0[v]), gram(u, v));

  ExtractedCertificate out;
  Exponent zero(n, 0);
  ExtRational g_ext = p.f.constant_term() - matched.constant_term();
  if (!g_ext.is_rational()) throw InputError("relaxation requires rational data");
  out.gamma = g_ext.rational_part();
  // Fold every other coefficient mismatch into Q0 so the identity holds exactly.
  Polynomial residual = p.f - matched;
  for (const auto& [e, c] : residual.terms()) {
    if (e == zero) continue;
    // Prefer a diagonal slot, else the first pair in basis order.
    std::size_t bu = n0, bv = n0;
    for (std::size_t u = 0; u < n0 && bu == n0; ++u)
      if (add_exp(p.basis0[u], p.basis0[u]) == e) bu = bv = u;
    for (std::size_t u = 0; u < n0 && bu == n0; ++u)
      for (std::size_t v = u + 1; v < n0; ++v)
        if (add_exp(p.basis0[u], p.basis0[v]) == e) {
          bu = u;
          bv = v;
          break;
        }
    if (bu == n0) throw InternalError("monomial outside the Gram support");
    if (bu == bv) {
      gram(bu, bu) += c;
    } else {
      ExtRational half = c * ExtRational(mpq_class(1, 2));
      gram(bu, bv) += half;
      gram(bv, bu) += half;
    }
  }
  if (!gram.is_zero()) cert.sos.push_back({p.basis0, gram});
  out.certificate = std::move(cert);
  out.target = p.f - Polynomial::constant(n, ExtRational(out.gamma));
  return out;
}

RelaxResult relax(const Polynomial& f, const SymPolyMatrix& g, unsigned k, const SolveOptions& options) {
  SDPProblem p = build_relaxation(f, g, k);
  RelaxResult r = solve_sdp(p, options);
  if (r.status != SolveStatus::kOptimal) {
    throw SolveError("relaxation solve ended with status " + to_string(r.status), r);
  }
  ExtractedCertificate ec = extract_certificate(r, p);
  r.certified_gamma = ec.gamma;
  r.certificate = std::move(ec.certificate);
  return r;
}

std::vector<double> hierarchy(const Polynomial& f, const SymPolyMatrix& g, unsigned k_from, unsigned k_to,
                              const SolveOptions& options) {
  if (k_from > k_to) throw InputError("empty order range");
  std::vector<double> out;
  for (unsigned k = k_from; k <= k_to; ++k) {
    double v = relax(f, g, k, options).gamma;
    if (!out.empty() && v < out.back() - 2 * options.tol) {
      throw InternalError("relaxation values decreased from order " + std::to_string(k - 1) + " to " +
                          std::to_string(k));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace pmi
