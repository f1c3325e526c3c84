#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pmi/poly_matrix.hpp"

namespace pmi {

// One scalar inequality d >= 0 together with a column v (m x 1) such that d = v^T G v.
struct ScalarizedEntry {
  Polynomial d;
  PolyMatrix v;
};

struct ScalarizedSystem {
  std::size_t m = 0;
  std::size_t nvars = 0;
  std::vector<ScalarizedEntry> entries;
};

// One reduction of the recursion, indices 0-based with i <= j.
struct ReductionStep {
  std::size_t i = 0;
  std::size_t j = 0;
  Polynomial s;        // G_ii, or G_ii + G_jj + 2 G_ij
  SymPolyMatrix b;     // s (s H - beta beta^T), one size smaller
  PolyMatrix transform;  // X T with (X T) G (X T)^T = diag(s^3, b)
};

// Largest matrix size accepted by scalarize.
inline constexpr std::size_t kMaxScalarizeSize = 5;

ScalarizedSystem scalarize_base2(const SymPolyMatrix& g);
ReductionStep reduction_step(const SymPolyMatrix& g, std::size_t i, std::size_t j);
ScalarizedSystem scalarize(const SymPolyMatrix& g);

bool verify_witness(const Polynomial& d, const PolyMatrix& v, const SymPolyMatrix& g);

struct EquivalenceViolation {
  std::size_t point_index = 0;
  bool psd = false;
  bool all_nonnegative = false;
};

struct EquivalenceReport {
  std::size_t points_checked = 0;
  std::vector<EquivalenceViolation> violations;
  bool ok() const { return violations.empty(); }
};

// For each point, decides exactly whether G(x) is PSD and whether every d_i(x) >= 0.
EquivalenceReport equivalence_check(const SymPolyMatrix& g, const ScalarizedSystem& system,
                                    const std::vector<std::vector<ExtRational>>& points);

// Exact PSD decision used by the equivalence check (minors up to size 6, LDL^T beyond).
bool psd_exact_any_size(const RationalSymMatrix& m);

struct CharpolyScalarization {
  // coefficients[i-1] = g_i, the sum of the i x i principal minors, so that
  // det(lambda I - G) = lambda^m + sum_i (-1)^i g_i lambda^(m-i).
  std::vector<Polynomial> coefficients;
  // trace(G) = sum_k e_k^T G e_k; the only coefficient carrying a witness.
  std::vector<PolyMatrix> trace_witness;
};
CharpolyScalarization charpoly_scalarization(const SymPolyMatrix& g);

Polynomial determinant(const PolyMatrix& m);

std::string format_system(const ScalarizedSystem& s);

}  // namespace pmi
