#include "pmi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmi/bernstein.hpp"
#include "pmi/errors.hpp"
#include "pmi/numeric.hpp"

namespace pmi {

namespace {

double log10_mpz(const mpz_class& z) {
  if (sgn(z) == 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log10(std::fabs(mant)) + static_cast<double>(exp) * std::log10(2.0);
}

double log10_mpq(const mpq_class& q) { return log10_mpz(q.get_num()) - log10_mpz(q.get_den()); }

mpq_class pow_q(const mpq_class& base, const mpz_class& exponent) {
  unsigned long e = mpz_class(abs(exponent)).get_ui();
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  mpq_class out(sgn(exponent) >= 0 ? num : den, sgn(exponent) >= 0 ? den : num);
  out.canonicalize();
  return out;
}

struct FactorSpec {
  std::string name;
  mpq_class base;
  mpq_class exponent;
};

BoundReport product_report(const std::string& id, const std::vector<FactorSpec>& specs) {
  BoundReport r;
  r.formula_id = id;
  double digits = 0.0;
  bool integral = true;
  for (const auto& s : specs) {
    if (sgn(s.base) <= 0) throw InputError("factor " + s.name + " has a nonpositive base");
    if (s.exponent.get_den() != 1) integral = false;
    double size = std::fabs(log10_mpz(s.base.get_num())) + std::fabs(log10_mpz(s.base.get_den()));
    digits += std::fabs(s.exponent.get_d()) * size;
  }
  r.exact = integral && digits <= kMaxExactDigits;
  r.value = 1;
  for (const auto& s : specs) {
    BoundFactor f;
    f.name = s.name;
    f.base = s.base;
    f.exponent = s.exponent;
    f.log10_value = s.exponent.get_d() * log10_mpq(s.base);
    if (r.exact) {
      f.value = pow_q(s.base, s.exponent.get_num());
      r.value *= *f.value;
    }
    r.log10_value += f.log10_value;
    r.factors.push_back(std::move(f));
  }
  if (r.exact) {
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), r.value.get_num().get_mpz_t(), r.value.get_den().get_mpz_t());
    r.k = k;
    r.log10_value = log10_mpq(r.value);
  } else {
    r.caveats.push_back(integral ? "value exceeds the exact-evaluation size limit; log10 reported"
                                 : "eta is not an integer; value reported in log10 only");
  }
  return r;
}

void validate(const BoundInputs& in) {
  if (in.n < 1 || in.m < 1 || in.d < 1 || in.d_G < 1) {
    throw InputError("n, m, d and d_G must be positive integers");
  }
  if (sgn(in.ratio) <= 0) throw InputError("ratio must be positive");
  if (in.kappa < 1) throw InputError("kappa must be at least 1");
  if (in.eta < 1) throw InputError("eta must be at least 1");
  if (sgn(in.C) <= 0) throw InputError("C must be positive");
}

void add_constant_caveats(BoundReport& r, bool uses_kappa) {
  r.caveats.insert(r.caveats.begin(), "C is an unspecified universal constant; value shown is for C as given");
  if (uses_kappa) r.caveats.insert(r.caveats.begin() + 1, "kappa is a user-supplied Lojasiewicz constant, not computed");
}

mpq_class z2q(const mpz_class& z) { return mpq_class(z); }

std::vector<FactorSpec> matrix_core(const BoundInputs& in, bool with_pv_shape) {
  mpq_class seven_eta = 7 * in.eta;
  mpq_class th = z2q(theta(in.m));
  std::vector<FactorSpec> f = {
      {"C", in.C, 1},
      {"8^(7*eta)", 8, seven_eta},
      {"3^(6*(m-1))", 3, 6 * (in.m - 1)},
  };
  if (with_pv_shape) {
    f.push_back({"(theta(m)+2)^3", th + 2, 3});
    f.push_back({"(n+1)^2", in.n + 1, 2});
    f.push_back({"ceil(d_G/2)^6", (in.d_G + 1) / 2, 6});
  } else {
    f.push_back({"theta(m)^3", th, 3});
    f.push_back({"n^2", in.n, 2});
    f.push_back({"d_G^6", in.d_G, 6});
  }
  f.push_back({"kappa^7", in.kappa, 7});
  f.push_back({"d^(14*eta)", in.d, 14 * in.eta});
  f.push_back({"ratio^(7*eta+3)", in.ratio, seven_eta + 3});
  return f;
}

}  // namespace

mpz_class theta(unsigned m) {
  if (m < 1) throw InputError("theta requires m >= 1");
  mpz_class sum = 0;
  for (unsigned i = 1; i <= m; ++i) {
    mpz_class prod = 1;
    for (unsigned k = m + 1 - i; k <= m; ++k) prod *= mpz_class(k) * (k + 1) / 2;
    sum += prod;
  }
  return sum;
}

BoundReport putinar_matrix_bound(const BoundInputs& in) {
  validate(in);
  BoundReport r = product_report("putinar-matrix", matrix_core(in, false));
  add_constant_caveats(r, true);
  return r;
}

BoundReport putinar_scalar_bound(const BoundInputs& in) {
  validate(in);
  mpq_class seven_eta = 7 * in.eta;
  BoundReport r = product_report("putinar-scalar", {{"C", in.C, 1},
                                                    {"8^(7*eta)", 8, seven_eta},
                                                    {"m^3", in.m, 3},
                                                    {"n^2", in.n, 2},
                                                    {"d_G^6", in.d_G, 6},
                                                    {"kappa^7", in.kappa, 7},
                                                    {"d^(14*eta)", in.d, 14 * in.eta},
                                                    {"ratio^(7*eta+3)", in.ratio, seven_eta + 3}});
  add_constant_caveats(r, true);
  if (in.m < 2) r.caveats.push_back("m < 2 lies outside the stated range m >= 2 of the scalar bound");
  return r;
}

BoundReport licq_bound(const BoundInputs& in) {
  validate(in);
  BoundReport r = product_report("licq", {{"C", in.C, 1},
                                          {"m^3", in.m, 3},
                                          {"n^2", in.n, 2},
                                          {"d_G^6", in.d_G, 6},
                                          {"kappa^7", in.kappa, 7},
                                          {"d^14", in.d, 14},
                                          {"ratio^10", in.ratio, 10}});
  add_constant_caveats(r, true);
  r.caveats.push_back("assumes the constraint qualification that makes the Lojasiewicz exponent 1");
  return r;
}

BoundReport pv_bound(const BoundInputs& in) {
  validate(in);
  BoundReport r = product_report("pv", matrix_core(in, true));
  add_constant_caveats(r, true);
  if (r.exact) {
    r.final_degree = 2 * *r.k + in.d;
    r.final_degree_log10 = log10_mpz(*r.final_degree);
  } else {
    // 2k + d is dominated by 2k at these magnitudes.
    r.final_degree_log10 = std::log10(2.0) + r.log10_value;
  }
  return r;
}

BoundReport perturbation_bound(const mpq_class& eps, const mpq_class& eta, const mpq_class& C) {
  if (sgn(eps) <= 0) throw InputError("epsilon must be positive");
  if (eta < 1) throw InputError("eta must be at least 1");
  if (sgn(C) <= 0) throw InputError("C must be positive");
  mpq_class exponent = -(7 * eta + 3);
  BoundReport r = product_report("perturbation", {{"C", C, 1}, {"eps^(-7*eta-3)", eps, exponent}});
  add_constant_caveats(r, false);
  return r;
}

mpz_class eta_estimate(unsigned n, unsigned m, unsigned d_G, EtaSetting setting) {
  if (n < 1 || m < 1 || d_G < 1) throw InputError("n, m and d_G must be positive");
  auto pw = [](const mpz_class& b, long e) {
    if (e < 0) throw InputError("negative exponent in eta estimate");
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
  };
  mpz_class three_m1 = pw(3, m - 1);
  switch (setting) {
    case EtaSetting::kScalar:
      return mpz_class(d_G + 1) * pw(3 * d_G, static_cast<long>(n + m) - 2);
    case EtaSetting::kMatrix: {
      long e = static_cast<long>(n) + theta(m).get_si() - 2;
      return (three_m1 * d_G + 1) * pw(3 * three_m1 * d_G, e);
    }
    case EtaSetting::kHomogenized: {
      mpz_class half = (d_G + 1) / 2;
      long e = static_cast<long>(n) + theta(m).get_si() - 1;
      return (2 * three_m1 * half + 1) * pw(2 * 3 * three_m1 * half, e);
    }
  }
  throw InputError("unknown eta setting");
}

mpz_class lojasiewicz_exponent_formula(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw InputError("n and d must be positive");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), mpz_class(3 * d - 3).get_mpz_t(), n - 1);
  return d * out;
}

double convergence_rate(const BoundInputs& in, double norm_f_b, double k) {
  validate(in);
  if (k < 1) throw InputError("relaxation order must be at least 1");
  BoundInputs base = in;
  base.ratio = 1;
  double log10_k0 = putinar_matrix_bound(base).log10_value;
  double e = 7.0 * in.eta.get_d() + 3.0;
  return 3.0 * std::pow(10.0, log10_k0 / e) * norm_f_b * std::pow(k, -1.0 / e);
}

MarkovReport markov_gradient_bound(const Polynomial& p) {
  MarkovReport r;
  if (p.nvars() == 0) throw InputError("Markov bound needs at least one variable");
  double d = p.degree();
  r.factor = 2.0 * d * (2.0 * d - 1.0) / (std::sqrt(static_cast<double>(p.nvars())) + 1.0);
  if (p.degree() == 0) r.factor = 0.0;
  r.sup_bound = bernstein_norm(p);
  r.bound = r.factor * r.sup_bound;
  return r;
}

unsigned default_simplex_resolution(std::size_t nvars, unsigned degree) {
  double target = std::pow(10.0, static_cast<double>(nvars)) * (degree + 1);
  unsigned res = 2;
  while (true) {
    unsigned next = res + 2;
    if (static_cast<double>(count_monomials_up_to(nvars, next)) > target) break;
    res = next;
  }
  return res;
}

SimplexMinEstimate estimate_fmin_simplex(const SymPolyMatrix& f, unsigned resolution) {
  std::size_t n = f.nvars();
  if (n == 0) throw InputError("simplex estimate needs at least one variable");
  SimplexMinEstimate est;
  est.resolution = resolution == 0 ? default_simplex_resolution(n, f.degree()) : resolution;
  ExtRational scale = simplex_scale(n);
  double scale_d = scale.to_double();
  std::size_t l = f.size();
  est.grid_min = INFINITY;
  std::vector<unsigned> best;
  for (const auto& j : monomials_up_to(n, est.resolution)) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = scale_d * j[i] / est.resolution - 1.0;
    std::vector<double> vals = f.evaluate(x);
    Eigen::Map<Eigen::MatrixXd> m(vals.data(), static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    double lam = min_eigenvalue_numeric(m);
    ++est.points;
    if (lam < est.grid_min) {
      est.grid_min = lam;
      best = j;
    }
  }
  est.argmin.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    est.argmin[i] = scale * ExtRational(mpq_class(best[i], est.resolution)) - ExtRational(1);
  }
  double d = f.degree();
  double factor = d == 0 ? 0.0 : 2.0 * d * (2.0 * d - 1.0) / (std::sqrt(static_cast<double>(n)) + 1.0);
  est.lipschitz = factor * bernstein_norm(f);
  est.covering_radius = std::sqrt(2.0) * scale_d / est.resolution;
  est.lower_bound = est.grid_min - est.lipschitz * est.covering_radius;
  return est;
}

std::string format_bound_report(const BoundReport& r) {
  std::ostringstream out;
  out << "formula " << r.formula_id << "\n";
  for (const auto& f : r.factors) {
    out << "  " << f.name << " = ";
    if (f.value) {
      out << f.value->get_str();
    } else {
      out << "10^" << f.log10_value;
    }
    out << "\n";
  }
  if (r.exact) {
    out << "value " << r.value.get_str() << "\n";
    out << "k " << r.k->get_str() << "\n";
  }
  out << "log10 " << r.log10_value << "\n";
  if (r.final_degree) {
    out << "final_degree " << r.final_degree->get_str() << "\n";
  } else if (r.final_degree_log10) {
    out << "final_degree_log10 " << *r.final_degree_log10 << "\n";
  }
  for (const auto& c : r.caveats) out << "caveat: " << c << "\n";
  return out.str();
}

}  // namespace pmi
