#include "pmi/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmi/bernstein.hpp"
#include "pmi/errors.hpp"
#include "pmi/numeric.hpp"

namespace pmi {

SymPolyMatrix sos_block_matrix(const SosBlock& block, std::size_t l, std::size_t nvars) {
  std::size_t nb = block.basis.size();
  if (block.gram.rows() != l * nb || block.gram.cols() != l * nb) {
    throw InputError("Gram matrix size " + std::to_string(block.gram.rows()) + " does not match " +
                     std::to_string(l) + " x " + std::to_string(nb) + " basis");
  }
  for (const auto& e : block.basis) {
    if (e.size() != nvars) throw InputError("basis monomial has the wrong number of variables");
  }
  SymPolyMatrix s(l, nvars);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a; b < l; ++b) {
      Polynomial p(nvars);
      for (std::size_t u = 0; u < nb; ++u) {
        for (std::size_t v = 0; v < nb; ++v) {
          const ExtRational& c = block.gram(a * nb + u, b * nb + v);
          if (c.is_zero()) continue;
          Exponent e(nvars);
          for (std::size_t i = 0; i < nvars; ++i) e[i] = block.basis[u][i] + block.basis[v][i];
          p.add_term(e, c);
        }
      }
      s.set(a, b, p);
    }
  }
  return s;
}

SymPolyMatrix reconstruct(const QMCertificate& cert, const SymPolyMatrix& g) {
  SymPolyMatrix total(cert.l, cert.nvars);
  for (const auto& b : cert.sos) total += sos_block_matrix(b, cert.l, cert.nvars);
  for (const auto& t : cert.multipliers) {
    if (t.p.rows() != g.size() || t.p.cols() != cert.l) throw InputError("multiplier has the wrong shape");
    total += congruence(t.p, g).scaled(t.weight);
  }
  for (const auto& t : cert.ideal) {
    if (t.h.size() != cert.l) throw InputError("ideal term has the wrong size");
    total += t.h.scaled(t.generator);
  }
  return total;
}

unsigned certificate_term_degree(const QMCertificate& cert, const SymPolyMatrix& g) {
  unsigned deg = 0;
  for (const auto& b : cert.sos) {
    unsigned top = 0;
    for (const auto& e : b.basis) top = std::max(top, total_degree(e));
    if (!b.gram.is_zero()) deg = std::max(deg, 2 * top);
  }
  for (const auto& t : cert.multipliers) {
    if (!t.p.is_zero()) deg = std::max(deg, 2 * t.p.degree() + g.degree());
  }
  for (const auto& t : cert.ideal) {
    if (!t.h.is_zero()) deg = std::max(deg, t.generator.degree() + t.h.degree());
  }
  return deg;
}

namespace {

double numeric_min_eigenvalue(const RationalSymMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return min_eigenvalue_numeric(to_eigen(m));
}

void fail(VerifyReport& r, const std::string& msg) { r.failures.push_back(msg); }

}  // namespace

VerifyReport verify_certificate(const SymPolyMatrix& f, const SymPolyMatrix& g, const QMCertificate& cert,
                                CertMode mode, double tol, const std::vector<Polynomial>& equalities) {
  VerifyReport r;
  try {
    if (cert.nvars != f.nvars() || cert.nvars != g.nvars()) fail(r, "header: variable count mismatch");
    if (cert.l != f.size()) fail(r, "header: certificate size does not match F");
    if (cert.m != g.size()) fail(r, "header: constraint size does not match G");
    if (!r.failures.empty()) return r;

    for (std::size_t k = 0; k < cert.sos.size(); ++k) {
      const SosBlock& b = cert.sos[k];
      BlockCheck c;
      c.name = "sos block " + std::to_string(k + 1);
      if (b.gram.rows() != cert.l * b.basis.size() || !b.gram.is_symmetric()) {
        c.ok = false;
        c.detail = "Gram matrix has the wrong size or is not symmetric";
      } else {
        c.margin = numeric_min_eigenvalue(b.gram);
        if (mode == CertMode::kExact) {
          bool psd = b.gram.rows() <= kMaxExactMinorSize ? psd_exact(b.gram, false) : psd_ldlt(b.gram, false);
          if (!psd) {
            c.ok = false;
            c.detail = "Gram matrix is not PSD";
          }
        } else if (c.margin < -tol) {
          c.ok = false;
          c.detail = "Gram matrix smallest eigenvalue below -tol";
        }
      }
      if (!c.ok) fail(r, c.name + ": " + c.detail);
      r.blocks.push_back(c);
    }
    for (std::size_t k = 0; k < cert.multipliers.size(); ++k) {
      const MultiplierTerm& t = cert.multipliers[k];
      BlockCheck c;
      c.name = "multiplier " + std::to_string(k + 1);
      c.margin = t.weight.to_double();
      if (t.p.rows() != cert.m || t.p.cols() != cert.l || t.p.nvars() != cert.nvars) {
        c.ok = false;
        c.detail = "multiplier matrix has the wrong shape";
      } else if (mode == CertMode::kExact ? t.weight.sign() < 0 : c.margin < -tol) {
        c.ok = false;
        c.detail = "negative weight";
      }
      if (!c.ok) fail(r, c.name + ": " + c.detail);
      r.blocks.push_back(c);
    }
    for (std::size_t k = 0; k < cert.ideal.size(); ++k) {
      const IdealTerm& t = cert.ideal[k];
      BlockCheck c;
      c.name = "ideal term " + std::to_string(k + 1);
      bool declared = std::find(equalities.begin(), equalities.end(), t.generator) != equalities.end();
      if (!declared) {
        c.ok = false;
        c.detail = "generator is not a declared equality constraint";
      } else if (t.h.size() != cert.l || t.h.nvars() != cert.nvars) {
        c.ok = false;
        c.detail = "ideal multiplier has the wrong shape";
      }
      if (!c.ok) fail(r, c.name + ": " + c.detail);
      r.blocks.push_back(c);
    }
    if (!r.failures.empty()) return r;

    r.term_degree = certificate_term_degree(cert, g);
    if (r.term_degree > cert.degree) {
      fail(r, "degree: terms reach degree " + std::to_string(r.term_degree) + " above declared " +
                  std::to_string(cert.degree));
    }
    SymPolyMatrix residual = f - reconstruct(cert, g);
    if (residual.is_zero()) {
      r.residual_ok = true;
      r.residual_norm = 0.0;
    } else {
      r.residual_norm = bernstein_norm(residual);
      r.residual_ok = mode == CertMode::kNumeric && r.residual_norm <= tol;
      if (!r.residual_ok) {
        std::ostringstream msg;
        msg << "residual: F minus reconstruction is nonzero (Bernstein norm " << r.residual_norm << ")";
        fail(r, msg.str());
      }
    }
  } catch (const std::exception& e) {
    fail(r, std::string("error: ") + e.what());
  }
  r.ok = r.failures.empty();
  return r;
}

std::string serialize(const QMCertificate& cert) {
  std::ostringstream out;
  out << "qmcert 1\n";
  out << "nvars " << cert.nvars << "\n";
  out << "size " << cert.l << "\n";
  out << "constraint_size " << cert.m << "\n";
  out << "degree " << cert.degree << "\n";
  out << "mode " << (cert.mode == CertMode::kExact ? "exact" : "numeric") << "\n";
  out << "sos_blocks " << cert.sos.size() << "\n";
  for (std::size_t k = 0; k < cert.sos.size(); ++k) {
    const SosBlock& b = cert.sos[k];
    out << "block " << k + 1 << " basis " << b.basis.size() << "\n";
    for (const auto& e : b.basis) {
      out << "monomial";
      for (unsigned v : e) out << ' ' << v;
      out << "\n";
    }
    out << "gram\n";
    for (std::size_t i = 0; i < b.gram.rows(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) out << (j ? " " : "") << b.gram(i, j).to_token();
      out << "\n";
    }
  }
  out << "multipliers " << cert.multipliers.size() << "\n";
  for (std::size_t k = 0; k < cert.multipliers.size(); ++k) {
    const MultiplierTerm& t = cert.multipliers[k];
    out << "multiplier " << k + 1 << " weight " << t.weight.to_token() << "\n";
    for (std::size_t i = 0; i < t.p.rows(); ++i) {
      for (std::size_t j = 0; j < t.p.cols(); ++j) {
        out << "entry " << i + 1 << ' ' << j + 1 << ' ' << t.p(i, j).to_string() << "\n";
      }
    }
  }
  out << "ideal_terms " << cert.ideal.size() << "\n";
  for (std::size_t k = 0; k < cert.ideal.size(); ++k) {
    const IdealTerm& t = cert.ideal[k];
    out << "ideal " << k + 1 << "\n";
    out << "generator " << t.generator.to_string() << "\n";
    for (std::size_t i = 0; i < t.h.size(); ++i) {
      for (std::size_t j = i; j < t.h.size(); ++j) {
        out << "entry " << i + 1 << ' ' << j + 1 << ' ' << t.h(i, j).to_string() << "\n";
      }
    }
  }
  out << "end\n";
  return out.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      std::string line(text.substr(start, nl - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
      start = nl + 1;
    }
  }

  [[noreturn]] void error(const std::string& msg) const {
    throw InputError("certificate parse error at line " + std::to_string(pos_) + ": " + msg);
  }

  // Returns the next line, failing with the name of the section being read.
  const std::string& next(const std::string& section) {
    if (pos_ >= lines_.size()) {
      throw InputError("certificate parse error: unexpected end of input, missing section '" + section + "'");
    }
    return lines_[pos_++];
  }

  // Reads "<keyword> <rest>" and returns rest.
  std::string keyword(const std::string& kw) {
    const std::string& line = next(kw);
    if (line == kw) return "";
    if (line.rfind(kw + " ", 0) != 0) error("expected '" + kw + "', found '" + line + "'");
    return line.substr(kw.size() + 1);
  }

  std::size_t keyword_uint(const std::string& kw) { return to_uint(keyword(kw)); }

  std::size_t to_uint(const std::string& s) const {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used != s.size() || s.empty() || s[0] == '-') error("expected a nonnegative integer, found '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      error("expected a nonnegative integer, found '" + s + "'");
    }
  }

  std::vector<std::string> split(const std::string& s) const {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
  }

  bool done() const { return pos_ >= lines_.size(); }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

// Parses "entry r c <poly>" into indices and polynomial text.
void parse_entry(LineReader& rd, std::size_t* r, std::size_t* c, std::string* poly) {
  std::string rest = rd.keyword("entry");
  std::size_t s1 = rest.find(' ');
  std::size_t s2 = s1 == std::string::npos ? s1 : rest.find(' ', s1 + 1);
  if (s2 == std::string::npos) rd.error("malformed entry line");
  *r = rd.to_uint(rest.substr(0, s1));
  *c = rd.to_uint(rest.substr(s1 + 1, s2 - s1 - 1));
  *poly = rest.substr(s2 + 1);
}

Polynomial parse_poly_line(LineReader& rd, const std::string& text, std::size_t nvars) {
  try {
    return Polynomial::parse(text, nvars);
  } catch (const InputError& e) {
    rd.error(e.what());
  }
}

}  // namespace

QMCertificate deserialize(std::string_view text) {
  LineReader rd(text);
  QMCertificate cert;
  if (rd.keyword("qmcert") != "1") rd.error("unsupported certificate version");
  cert.nvars = rd.keyword_uint("nvars");
  cert.l = rd.keyword_uint("size");
  cert.m = rd.keyword_uint("constraint_size");
  cert.degree = static_cast<unsigned>(rd.keyword_uint("degree"));
  std::string mode = rd.keyword("mode");
  if (mode == "exact") {
    cert.mode = CertMode::kExact;
  } else if (mode == "numeric") {
    cert.mode = CertMode::kNumeric;
  } else {
    rd.error("unknown mode '" + mode + "'");
  }
  if (cert.nvars == 0 || cert.l == 0 || cert.m == 0) rd.error("sizes must be positive");

  std::size_t nblocks = rd.keyword_uint("sos_blocks");
  for (std::size_t k = 0; k < nblocks; ++k) {
    auto head = rd.split(rd.keyword("block"));
    if (head.size() != 3 || head[1] != "basis" || rd.to_uint(head[0]) != k + 1) rd.error("malformed block header");
    std::size_t nb = rd.to_uint(head[2]);
    SosBlock b;
    for (std::size_t u = 0; u < nb; ++u) {
      auto toks = rd.split(rd.keyword("monomial"));
      if (toks.size() != cert.nvars) rd.error("monomial has the wrong number of exponents");
      Exponent e;
      for (const auto& t : toks) e.push_back(static_cast<unsigned>(rd.to_uint(t)));
      b.basis.push_back(e);
    }
    rd.keyword("gram");
    std::size_t size = nb * cert.l;
    b.gram = RationalSymMatrix(size, size);
    for (std::size_t i = 0; i < size; ++i) {
      auto toks = rd.split(rd.next("gram"));
      if (toks.size() != i + 1) rd.error("Gram row " + std::to_string(i + 1) + " must have " + std::to_string(i + 1) + " entries");
      for (std::size_t j = 0; j <= i; ++j) {
        try {
          b.gram(i, j) = ExtRational::parse(toks[j]);
        } catch (const InputError& e) {
          rd.error(e.what());
        }
        b.gram(j, i) = b.gram(i, j);
      }
    }
    cert.sos.push_back(std::move(b));
  }

  std::size_t nmult = rd.keyword_uint("multipliers");
  for (std::size_t k = 0; k < nmult; ++k) {
    auto head = rd.split(rd.keyword("multiplier"));
    if (head.size() != 3 || head[1] != "weight" || rd.to_uint(head[0]) != k + 1) rd.error("malformed multiplier header");
    MultiplierTerm t;
    try {
      t.weight = ExtRational::parse(head[2]);
    } catch (const InputError& e) {
      rd.error(e.what());
    }
    t.p = PolyMatrix(cert.m, cert.l, cert.nvars);
    for (std::size_t i = 0; i < cert.m; ++i) {
      for (std::size_t j = 0; j < cert.l; ++j) {
        std::size_t r = 0, c = 0;
        std::string poly;
        parse_entry(rd, &r, &c, &poly);
        if (r != i + 1 || c != j + 1) rd.error("multiplier entries out of order");
        t.p(i, j) = parse_poly_line(rd, poly, cert.nvars);
      }
    }
    cert.multipliers.push_back(std::move(t));
  }

  std::size_t nideal = rd.keyword_uint("ideal_terms");
  for (std::size_t k = 0; k < nideal; ++k) {
    if (rd.to_uint(rd.keyword("ideal")) != k + 1) rd.error("ideal terms out of order");
    IdealTerm t;
    t.generator = parse_poly_line(rd, rd.keyword("generator"), cert.nvars);
    t.h = SymPolyMatrix(cert.l, cert.nvars);
    for (std::size_t i = 0; i < cert.l; ++i) {
      for (std::size_t j = i; j < cert.l; ++j) {
        std::size_t r = 0, c = 0;
        std::string poly;
        parse_entry(rd, &r, &c, &poly);
        if (r != i + 1 || c != j + 1) rd.error("ideal entries out of order");
        t.h.set(i, j, parse_poly_line(rd, poly, cert.nvars));
      }
    }
    cert.ideal.push_back(std::move(t));
  }
  rd.keyword("end");
  return cert;
}

}  // namespace pmi
