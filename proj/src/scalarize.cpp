#include "pmi/scalarize.hpp"

#include <numeric>
#include <sstream>

#include "pmi/bounds.hpp"
#include "pmi/errors.hpp"

namespace pmi {

namespace {

PolyMatrix column_of(const std::vector<Polynomial>& entries) {
  PolyMatrix v(entries.size(), 1, entries[0].nvars());
  for (std::size_t i = 0; i < entries.size(); ++i) v(i, 0) = entries[i];
  return v;
}

Polynomial quadratic_form(const PolyMatrix& v, const SymPolyMatrix& g) {
  return congruence(v, g)(0, 0);
}

void push_checked(ScalarizedSystem& sys, const SymPolyMatrix& g, Polynomial d, PolyMatrix v) {
  if (!verify_witness(d, v, g)) throw InternalError("scalarization witness identity failed");
  sys.entries.push_back({std::move(d), std::move(v)});
}

}  // namespace

bool verify_witness(const Polynomial& d, const PolyMatrix& v, const SymPolyMatrix& g) {
  if (v.rows() != g.size() || v.cols() != 1 || v.nvars() != g.nvars() || d.nvars() != g.nvars()) {
    return false;
  }
  return d == quadratic_form(v, g);
}

ScalarizedSystem scalarize_base2(const SymPolyMatrix& g) {
  if (g.size() != 2) throw InputError("base case requires a 2x2 matrix");
  std::size_t n = g.nvars();
  const Polynomial& g11 = g(0, 0);
  const Polynomial& g12 = g(0, 1);
  const Polynomial& g22 = g(1, 1);
  Polynomial det = g11 * g22 - g12 * g12;
  Polynomial s = g11 + g12 + g12 + g22;
  Polynomial off = g12 + g22;
  Polynomial one = Polynomial::constant(n, 1);
  Polynomial zero(n);

  ScalarizedSystem sys;
  sys.m = 2;
  sys.nvars = n;
  push_checked(sys, g, g11, column_of({one, zero}));
  push_checked(sys, g, g22, column_of({zero, one}));
  push_checked(sys, g, g11 * det, column_of({-g12, g11}));
  push_checked(sys, g, s, column_of({one, one}));
  push_checked(sys, g, g22 * det, column_of({g22, -g12}));
  push_checked(sys, g, s * (s * g22 - off * off), column_of({-off, g11 + g12}));
  return sys;
}

ReductionStep reduction_step(const SymPolyMatrix& g, std::size_t i, std::size_t j) {
  std::size_t size = g.size();
  std::size_t n = g.nvars();
  if (size < 2) throw InputError("reduction step requires size >= 2");
  if (i > j || j >= size) throw InputError("reduction step indices out of range");

  // T = P_i Q^(ij): add row j to row i (when i < j), then swap rows 0 and i.
  PolyMatrix t = PolyMatrix::identity(size, n);
  if (i != j) t(i, j) = Polynomial::constant(n, 1);
  if (i != 0) {
    for (std::size_t c = 0; c < size; ++c) std::swap(t(0, c), t(i, c));
  }
  SymPolyMatrix a = congruence(t.transpose(), g);
  Polynomial s = a(0, 0);

  // X = [[s, 0], [-beta, s I]].
  PolyMatrix x(size, size, n);
  x(0, 0) = s;
  for (std::size_t r = 1; r < size; ++r) {
    x(r, 0) = -a(r, 0);
    x(r, r) = s;
  }
  SymPolyMatrix b(size - 1, n);
  for (std::size_t r = 1; r < size; ++r) {
    for (std::size_t c = r; c < size; ++c) b.set(r - 1, c - 1, s * (s * a(r, c) - a(r, 0) * a(c, 0)));
  }

  ReductionStep step;
  step.i = i;
  step.j = j;
  step.s = s;
  step.b = b;
  step.transform = x * t;

  SymPolyMatrix check = congruence(step.transform.transpose(), g);
  SymPolyMatrix expected(size, n);
  expected.set(0, 0, s * s * s);
  for (std::size_t r = 1; r < size; ++r) {
    for (std::size_t c = r; c < size; ++c) expected.set(r, c, b(r - 1, c - 1));
  }
  if (check != expected) throw InternalError("reduction identity failed");
  return step;
}

ScalarizedSystem scalarize(const SymPolyMatrix& g) {
  std::size_t m = g.size();
  if (m < 2) throw InputError("scalarization requires m >= 2");
  if (m > kMaxScalarizeSize) {
    throw InputError("scalarization is limited to m <= " + std::to_string(kMaxScalarizeSize) +
                     " (theta(m) grows too fast for exact verification)");
  }
  if (m == 2) return scalarize_base2(g);
  std::size_t n = g.nvars();
  ScalarizedSystem sys;
  sys.m = m;
  sys.nvars = n;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      PolyMatrix v = PolyMatrix::unit_column(m, i, n);
      if (j != i) v(j, 0) = Polynomial::constant(n, 1);
      Polynomial d = i == j ? g(i, i) : g(i, i) + g(j, j) + g(i, j) + g(i, j);
      push_checked(sys, g, std::move(d), std::move(v));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      ReductionStep step = reduction_step(g, i, j);
      ScalarizedSystem child = scalarize(step.b);
      PolyMatrix xt_t = step.transform.transpose();
      for (auto& e : child.entries) {
        PolyMatrix padded(m, 1, n);
        for (std::size_t r = 0; r + 1 < m; ++r) padded(r + 1, 0) = e.v(r, 0);
        push_checked(sys, g, std::move(e.d), xt_t * padded);
      }
    }
  }
  if (sys.entries.size() != theta(static_cast<unsigned>(m)).get_ui()) {
    throw InternalError("scalarization produced the wrong number of entries");
  }
  return sys;
}

bool psd_exact_any_size(const RationalSymMatrix& m) {
  return m.rows() <= kMaxExactMinorSize ? psd_exact(m, false) : psd_ldlt(m, false);
}

EquivalenceReport equivalence_check(const SymPolyMatrix& g, const ScalarizedSystem& system,
                                    const std::vector<std::vector<ExtRational>>& points) {
  EquivalenceReport report;
  for (std::size_t k = 0; k < points.size(); ++k) {
    bool psd = psd_exact_any_size(g.evaluate(points[k]));
    bool all_nonneg = true;
    for (const auto& e : system.entries) {
      if (e.d.evaluate(points[k]).sign() < 0) {
        all_nonneg = false;
        break;
      }
    }
    ++report.points_checked;
    if (psd != all_nonneg) report.violations.push_back({k, psd, all_nonneg});
  }
  return report;
}

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  std::size_t size = m.rows();
  if (size == 0) return Polynomial::constant(m.nvars(), 1);
  if (size == 1) return m(0, 0);
  Polynomial det(m.nvars());
  for (std::size_t c = 0; c < size; ++c) {
    if (m(0, c).is_zero()) continue;
    PolyMatrix minor(size - 1, size - 1, m.nvars());
    for (std::size_t r = 1; r < size; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < size; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = m(r, k);
      }
    }
    Polynomial term = m(0, c) * determinant(minor);
    if (c % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

CharpolyScalarization charpoly_scalarization(const SymPolyMatrix& g) {
  std::size_t m = g.size();
  std::size_t n = g.nvars();
  if (m < 1) throw InputError("characteristic polynomial of an empty matrix");
  CharpolyScalarization out;
  out.coefficients.assign(m, Polynomial(n));
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    }
    PolyMatrix sub(idx.size(), idx.size(), n);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = g(idx[r], idx[c]);
    }
    out.coefficients[idx.size() - 1] += determinant(sub);
  }
  for (std::size_t i = 0; i < m; ++i) out.trace_witness.push_back(PolyMatrix::unit_column(m, i, n));
  return out;
}

std::string format_system(const ScalarizedSystem& s) {
  std::ostringstream out;
  out << "scalarized m " << s.m << " nvars " << s.nvars << " entries " << s.entries.size() << "\n";
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const auto& e = s.entries[k];
    out << "d[" << k + 1 << "] = " << e.d.to_string() << "\n";
    out << "v[" << k + 1 << "] = [";
    for (std::size_t r = 0; r < e.v.rows(); ++r) out << (r ? " ; " : "") << e.v(r, 0).to_string();
    out << "]\n";
  }
  return out.str();
}

}  // namespace pmi
