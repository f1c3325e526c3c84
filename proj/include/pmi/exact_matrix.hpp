#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pmi/ext_rational.hpp"

namespace pmi {

// Dense matrix over Q[sqrt(r)], row-major.
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExtMatrix identity(std::size_t n);
  static ExtMatrix from_rows(const std::vector<std::vector<ExtRational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExtRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ExtRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;
  ExtMatrix transpose() const;

  ExtMatrix& operator+=(const ExtMatrix& o);
  ExtMatrix& operator-=(const ExtMatrix& o);
  ExtMatrix& operator*=(const ExtRational& c);
  friend ExtMatrix operator+(ExtMatrix a, const ExtMatrix& b) { return a += b; }
  friend ExtMatrix operator-(ExtMatrix a, const ExtMatrix& b) { return a -= b; }
  friend ExtMatrix operator*(ExtMatrix a, const ExtRational& c) { return a *= c; }
  friend ExtMatrix operator*(const ExtMatrix& a, const ExtMatrix& b);
  friend bool operator==(const ExtMatrix& a, const ExtMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<double> to_doubles() const;  // row-major

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExtRational> data_;
};

// Symmetric exact matrices share the dense representation; symmetry is
// checked by the operations that rely on it.
using RationalSymMatrix = ExtMatrix;

ExtRational determinant(const ExtMatrix& m);

// Largest size accepted by psd_exact.
inline constexpr std::size_t kMaxExactMinorSize = 6;

// Principal-minor test: all principal minors >= 0 (or leading minors > 0 when strict).
bool psd_exact(const RationalSymMatrix& m, bool strict);

// Exact symmetric LDL^T with diagonal pivoting: P M P^T = L D L^T.
struct LdltResult {
  bool psd = false;            // factorization completed with D >= 0
  std::vector<std::size_t> perm;  // perm[k] = original index placed at position k
  ExtMatrix lower;             // unit lower triangular, in permuted order
  std::vector<ExtRational> diag;
};
LdltResult ldlt_exact(const RationalSymMatrix& m);

// PSD (or PD) test by exact LDL^T; no size cap.
bool psd_ldlt(const RationalSymMatrix& m, bool strict);

// Inverse by Gauss-Jordan elimination; throws on singular input.
ExtMatrix inverse(const ExtMatrix& m);

}  // namespace pmi
