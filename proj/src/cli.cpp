#include "pmi/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmi/bernstein.hpp"
#include "pmi/bounds.hpp"
#include "pmi/certificate.hpp"
#include "pmi/certify.hpp"
#include "pmi/errors.hpp"
#include "pmi/homogenize.hpp"
#include "pmi/polya.hpp"
#include "pmi/problem_file.hpp"
#include "pmi/relax.hpp"
#include "pmi/scalarize.hpp"
#include "pmi/sdpa.hpp"

namespace pmi::cli {

namespace {

using nlohmann::json;

std::string q(const mpq_class& v) { return v.get_str(); }

json matrix_json(const SymPolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json matrix_json(const RationalSymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_token());
    rows.push_back(row);
  }
  return rows;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw InputError("cannot write '" + path + "'");
  o << text;
}

const SymPolyMatrix& need_f(const ProblemFile& p) {
  if (!p.F) throw InputError("problem file has no F");
  return *p.F;
}

SymPolyMatrix g_or_unit(const ProblemFile& p) {
  if (p.G) return *p.G;
  return SymPolyMatrix::identity(1, p.n);
}

json bound_json(const BoundReport& r) {
  json j;
  j["formula"] = r.formula_id;
  j["exact"] = r.exact;
  j["log10_value"] = r.log10_value;
  if (r.exact) j["value"] = q(r.value);
  if (r.k) j["k"] = r.k->get_str();
  if (r.final_degree) j["final_degree"] = r.final_degree->get_str();
  if (r.final_degree_log10) j["final_degree_log10"] = *r.final_degree_log10;
  json fs = json::array();
  for (const auto& f : r.factors) {
    json fj{{"name", f.name}, {"base", q(f.base)}, {"exponent", q(f.exponent)}, {"log10", f.log10_value}};
    if (f.value) fj["value"] = q(*f.value);
    fs.push_back(fj);
  }
  j["factors"] = fs;
  j["caveats"] = r.caveats;
  return j;
}

json report_json(const VerifyReport& v) {
  json blocks = json::array();
  for (const auto& b : v.blocks)
    blocks.push_back({{"name", b.name}, {"ok", b.ok}, {"margin", b.margin}, {"detail", b.detail}});
  return {{"ok", v.ok},
          {"residual_ok", v.residual_ok},
          {"residual_norm", v.residual_norm},
          {"term_degree", v.term_degree},
          {"blocks", blocks},
          {"failures", v.failures}};
}

void print_report(std::ostream& out, const VerifyReport& v) {
  out << std::setprecision(6);
  out << "verification " << (v.ok ? "passed" : "failed") << "\n";
  out << "residual_norm " << v.residual_norm << " term_degree " << v.term_degree << "\n";
  for (const auto& b : v.blocks) out << b.name << ": " << (b.ok ? "ok" : "FAIL") << " margin " << b.margin << "\n";
  for (const auto& f : v.failures) out << "failure: " << f << "\n";
}

int cmd_bound(const std::string& formula, const BoundInputs& in, const std::string& eps, double norm, double k,
              bool as_json, std::ostream& out) {
  if (formula == "theta") {
    mpz_class t = theta(in.m);
    if (as_json)
      out << json{{"formula", "theta"}, {"m", in.m}, {"value", t.get_str()}}.dump(2) << "\n";
    else
      out << "theta(" << in.m << ") = " << t.get_str() << "\n";
    return kExitOk;
  }
  if (formula == "eta" || formula == "lojasiewicz") {
    json j;
    if (formula == "eta") {
      j = {{"formula", "eta"},
           {"scalar", eta_estimate(in.n, in.m, in.d_G, EtaSetting::kScalar).get_str()},
           {"matrix", eta_estimate(in.n, in.m, in.d_G, EtaSetting::kMatrix).get_str()},
           {"homogenized", eta_estimate(in.n, in.m, in.d_G, EtaSetting::kHomogenized).get_str()}};
    } else {
      j = {{"formula", "lojasiewicz"}, {"value", lojasiewicz_exponent_formula(in.n, in.d).get_str()}};
    }
    if (as_json) {
      out << j.dump(2) << "\n";
    } else {
      for (const auto& [key, val] : j.items())
        if (key != "formula") out << key << " = " << val.get<std::string>() << "\n";
    }
    return kExitOk;
  }
  if (formula == "rate") {
    double r = convergence_rate(in, norm, k);
    if (as_json)
      out << json{{"formula", "rate"}, {"k", k}, {"value", r}}.dump(2) << "\n";
    else
      out << "rate(k=" << k << ") = " << r << "\n";
    return kExitOk;
  }
  BoundReport r;
  if (formula == "putinar-matrix") r = putinar_matrix_bound(in);
  else if (formula == "putinar-scalar") r = putinar_scalar_bound(in);
  else if (formula == "licq") r = licq_bound(in);
  else if (formula == "pv") r = pv_bound(in);
  else if (formula == "perturbation") r = perturbation_bound(parse_rational(eps), in.eta, in.C);
  else throw InputError("unknown formula '" + formula + "'");
  if (as_json) out << bound_json(r).dump(2) << "\n";
  else out << format_bound_report(r);
  return kExitOk;
}

int cmd_polya(const std::string& path, unsigned max_degree, bool as_json, std::ostream& out, std::ostream& err) {
  ProblemFile p = read_problem_file(path);
  PolyaOptions opt;
  opt.max_degree = max_degree;
  try {
    PolyaCertificate c = polya_certificate(need_f(p), opt);
    if (as_json) {
      json coeffs = json::array();
      for (const auto& [alpha, m] : c.expansion.coeffs) coeffs.push_back({{"alpha", alpha}, {"matrix", matrix_json(m)}});
      out << json{{"degree", c.degree},
                  {"input_degree", c.input_degree},
                  {"mode", c.mode == PdMode::kExactMinors ? "exact" : "numeric"},
                  {"margins", c.margins},
                  {"norm_b", c.norm_b},
                  {"fmin_estimate", c.fmin_estimate},
                  {"bound_k", c.bound_k},
                  {"coefficients", coeffs}}
                 .dump(2)
          << "\n";
    } else {
      out << format_polya_certificate(c);
    }
    return kExitOk;
  } catch (const NotPositiveDefiniteOnSimplex& e) {
    json j{{"error", e.what()}};
    std::string w;
    if (e.witness) {
      json pt = json::array();
      for (const auto& v : *e.witness) pt.push_back(v.to_token());
      j["witness"] = pt;
      j["witness_min_eigenvalue"] = e.witness_min_eigenvalue;
      for (std::size_t i = 0; i < e.witness->size(); ++i) w += (i ? ", " : "") + (*e.witness)[i].to_token();
    }
    if (as_json) out << j.dump(2) << "\n";
    err << "not positive definite on the simplex: " << e.what();
    if (e.witness) err << " (witness " << w << ")";
    err << "\n";
    return kExitFailure;
  }
}

int cmd_scalarize(const std::string& path, bool as_json, std::ostream& out) {
  ProblemFile p = read_problem_file(path);
  if (!p.G) throw InputError("problem file has no G");
  ScalarizedSystem s = scalarize(*p.G);
  if (as_json) {
    json es = json::array();
    for (const auto& e : s.entries) {
      json v = json::array();
      for (std::size_t r = 0; r < e.v.rows(); ++r) v.push_back(e.v(r, 0).to_string());
      es.push_back({{"d", e.d.to_string()}, {"v", v}});
    }
    out << json{{"m", s.m}, {"nvars", s.nvars}, {"entries", es}}.dump(2) << "\n";
  } else {
    out << format_system(s);
  }
  return kExitOk;
}

int cmd_certify(const std::string& path, const std::string& ball_path, const std::string& output, bool as_json,
                std::ostream& out, std::ostream& err) {
  ProblemFile p = read_problem_file(path);
  const SymPolyMatrix& f = need_f(p);
  SymPolyMatrix g = g_or_unit(p);
  QMCertificate ball;
  if (!ball_path.empty()) {
    ball = deserialize(read_text(ball_path));
  } else {
    auto t = trivial_ball_witness(g);
    if (!t) throw InputError("G has no diagonal entry 1 - ||x||^2; supply --ball-witness");
    ball = *t;
  }
  AssembleResult r = assemble_simplex_putinar(f, g, ball);
  VerifyReport v = verify_certificate(f, g, r.certificate, CertMode::kExact);
  std::string text = serialize(r.certificate);
  if (!output.empty()) write_text(output, text);
  if (as_json) {
    json j{{"polya_degree", r.polya_degree}, {"ball_degree", r.ball_degree}, {"degree", r.degree},
           {"verification", report_json(v)}};
    if (output.empty()) j["certificate"] = text;
    out << j.dump(2) << "\n";
  } else {
    out << "polya_degree " << r.polya_degree << " ball_degree " << r.ball_degree << " degree " << r.degree << "\n";
    print_report(out, v);
    if (output.empty()) out << text;
  }
  if (!v.ok) {
    err << "assembled certificate failed verification\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_homogenize(const std::string& path, std::size_t grid, bool as_json, std::ostream& out, std::ostream& err) {
  ProblemFile p = read_problem_file(path);
  HomogenizedProblem h = lift_problem(need_f(p), g_or_unit(p));
  FtildeMinEstimate est;
  try {
    est = estimate_ftilde_min(h, grid);
  } catch (const EmptyFeasibleSample& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
  if (as_json) {
    out << json{{"d0", h.d0},
                {"f_degree", h.f_degree},
                {"g_degree", h.g_degree},
                {"f_tilde", matrix_json(h.f_tilde)},
                {"g_hat", matrix_json(h.g_hat)},
                {"sphere", h.sphere.to_string(0)},
                {"ftilde_min", est.value},
                {"argmin", est.argmin},
                {"samples", est.samples},
                {"feasible_samples", est.feasible_samples}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "d0 " << h.d0 << "\n";
  out << "F_tilde (x0 is the homogenizing variable):\n";
  for (std::size_t i = 0; i < h.f_tilde.size(); ++i)
    for (std::size_t j = i; j < h.f_tilde.size(); ++j)
      out << "  [" << i << "," << j << "] " << h.f_tilde(i, j).to_string(0) << "\n";
  out << "G_hat:\n";
  for (std::size_t i = 0; i < h.g_hat.size(); ++i)
    for (std::size_t j = i; j < h.g_hat.size(); ++j)
      out << "  [" << i << "," << j << "] " << h.g_hat(i, j).to_string(0) << "\n";
  out << std::setprecision(10) << "F_tilde_min ~ " << est.value << " at (";
  for (std::size_t i = 0; i < est.argmin.size(); ++i) out << (i ? ", " : "") << est.argmin[i];
  out << ")\nsamples " << est.samples << " feasible " << est.feasible_samples << "\n";
  return kExitOk;
}

Polynomial scalar_objective(const ProblemFile& p) {
  const SymPolyMatrix& f = need_f(p);
  if (f.size() != 1) throw InputError("relax needs a scalar objective (l = 1)");
  return f(0, 0);
}

int cmd_relax(const std::string& path, unsigned order, double tol, unsigned max_iter, const std::string& sdpa_path,
              const std::string& cert_path, bool as_json, std::ostream& out, std::ostream& err) {
  ProblemFile p = read_problem_file(path);
  Polynomial f = scalar_objective(p);
  SymPolyMatrix g = g_or_unit(p);
  SDPProblem prob = build_relaxation(f, g, order);
  if (!sdpa_path.empty()) write_text(sdpa_path, export_sdpa(prob));
  SolveOptions opt{tol, max_iter};
  RelaxResult r = solve_sdp(prob, opt);
  json j{{"order", order},
         {"status", to_string(r.status)},
         {"gamma", r.gamma},
         {"primal_residual", r.primal_residual},
         {"dual_residual", r.dual_residual},
         {"gap", r.gap},
         {"iterations", r.iterations}};
  bool ok = r.status == SolveStatus::kOptimal;
  std::optional<VerifyReport> vr;
  std::string certified;
  if (ok) {
    ExtractedCertificate ec = extract_certificate(r, prob);
    certified = q(ec.gamma);
    vr = verify_certificate(SymPolyMatrix::scalar(ec.target), g, ec.certificate, CertMode::kNumeric, 10 * tol);
    ok = vr->ok;
    j["certified_gamma"] = certified;
    j["verification"] = report_json(*vr);
    if (!cert_path.empty()) write_text(cert_path, serialize(ec.certificate));
  }
  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    out << std::setprecision(10) << "f_" << order << " = " << r.gamma << "\n";
    out << "status " << to_string(r.status) << " iterations " << r.iterations << "\n";
    out << std::setprecision(3) << "primal_residual " << r.primal_residual << " dual_residual " << r.dual_residual
        << " gap " << r.gap << "\n";
    if (vr) {
      out << "certified_gamma " << certified << "\n";
      print_report(out, *vr);
    }
  }
  if (!ok) {
    err << "relaxation " << (r.status == SolveStatus::kOptimal ? "certificate failed verification" : to_string(r.status))
        << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_verify(const std::string& cert_path, const std::string& path, const std::string& gamma, double tol,
               bool as_json, std::ostream& out, std::ostream& err) {
  QMCertificate cert = deserialize(read_text(cert_path));
  ProblemFile p = read_problem_file(path);
  SymPolyMatrix f = need_f(p);
  if (!gamma.empty()) f = f - SymPolyMatrix::identity(f.size(), f.nvars()).scaled(ExtRational(parse_rational(gamma)));
  SymPolyMatrix g = g_or_unit(p);
  VerifyReport v = verify_certificate(f, g, cert, cert.mode, tol);
  if (as_json) out << report_json(v).dump(2) << "\n";
  else print_report(out, v);
  if (!v.ok) {
    for (const auto& fl : v.failures) err << fl << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_export(const std::string& path, unsigned order, const std::string& gamma, const std::string& output,
               std::ostream& out) {
  ProblemFile p = read_problem_file(path);
  SDPProblem prob = build_relaxation(scalar_objective(p), g_or_unit(p), order);
  std::string text = export_sdpa(prob, gamma.empty() ? mpq_class(0) : parse_rational(gamma));
  if (output.empty()) out << text;
  else write_text(output, text);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity certificates for polynomial matrix inequalities"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  auto* bound = app.add_subcommand("bound", "Evaluate a degree-bound formula");
  std::string formula = "putinar-matrix";
  BoundInputs bin;
  std::string ratio = "1", kappa = "1", eta = "1", cst = "1", eps = "1";
  double norm = 1.0, kval = 1.0;
  bound->add_option("--formula", formula,
                    "putinar-matrix, putinar-scalar, licq, pv, perturbation, theta, eta, lojasiewicz, rate")
      ->capture_default_str();
  bound->add_option("--n", bin.n);
  bound->add_option("--m", bin.m);
  bound->add_option("--d", bin.d);
  bound->add_option("--dg", bin.d_G);
  bound->add_option("--ratio", ratio, "||F||_B / F_min");
  bound->add_option("--kappa", kappa);
  bound->add_option("--eta", eta);
  bound->add_option("--C", cst, "Universal constant (unknown; defaults to 1)");
  bound->add_option("--eps", eps, "Perturbation size");
  bound->add_option("--norm", norm, "Bernstein norm of f, for rate");
  bound->add_option("--k", kval, "Relaxation order, for rate");

  auto* polya = app.add_subcommand("polya", "Polya certificate on the scaled simplex");
  std::string problem;
  unsigned max_degree = 40;
  polya->add_option("problem", problem)->required();
  polya->add_option("--max-degree", max_degree);

  auto* scal = app.add_subcommand("scalarize", "Scalarize G(x) >= 0");
  scal->add_option("problem", problem)->required();

  auto* cert = app.add_subcommand("certify-simplex", "Constructive certificate for F on the simplex");
  std::string ball_path, output;
  cert->add_option("problem", problem)->required();
  cert->add_option("--ball-witness", ball_path, "Certificate file for 1 - ||x||^2 in QM[G]");
  cert->add_option("--output,-o", output);

  auto* hom = app.add_subcommand("homogenize", "Homogenized problem and F_tilde minimum estimate");
  std::size_t grid = 720;
  hom->add_option("problem", problem)->required();
  hom->add_option("--grid", grid);

  auto* rel = app.add_subcommand("relax", "Matrix SOS relaxation of order k");
  unsigned order = 1, max_iter = 100;
  double tol = 1e-8;
  std::string sdpa_path, cert_out;
  rel->add_option("problem", problem)->required();
  rel->add_option("--order", order)->required();
  rel->add_option("--tol", tol)->capture_default_str();
  rel->add_option("--max-iter", max_iter)->capture_default_str();
  rel->add_option("--export-sdpa", sdpa_path);
  rel->add_option("--emit-certificate", cert_out);

  auto* ver = app.add_subcommand("verify", "Verify a certificate against a problem");
  std::string cert_path, gamma;
  double vtol = 1e-6;
  ver->add_option("certificate", cert_path)->required();
  ver->add_option("problem", problem)->required();
  ver->add_option("--gamma", gamma, "Verify F - gamma I instead of F");
  ver->add_option("--tol", vtol)->capture_default_str();

  auto* exp = app.add_subcommand("export-sdpa", "Write the order-k relaxation in SDPA sparse format");
  exp->add_option("problem", problem)->required();
  exp->add_option("--order", order)->required();
  exp->add_option("--gamma", gamma);
  exp->add_option("--output,-o", output);

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", as_json, "Machine-readable output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*bound) {
      bin.ratio = parse_rational(ratio);
      bin.kappa = parse_rational(kappa);
      bin.eta = parse_rational(eta);
      bin.C = parse_rational(cst);
      return cmd_bound(formula, bin, eps, norm, kval, as_json, out);
    }
    if (*polya) return cmd_polya(problem, max_degree, as_json, out, err);
    if (*scal) return cmd_scalarize(problem, as_json, out);
    if (*cert) return cmd_certify(problem, ball_path, output, as_json, out, err);
    if (*hom) return cmd_homogenize(problem, grid, as_json, out, err);
    if (*rel) return cmd_relax(problem, order, tol, max_iter, sdpa_path, cert_out, as_json, out, err);
    if (*ver) return cmd_verify(cert_path, problem, gamma, vtol, as_json, out, err);
    if (*exp) return cmd_export(problem, order, gamma, output, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInputError;
}

}  // namespace pmi::cli
