#include "pmi/exact_matrix.hpp"

#include <numeric>
#include <utility>

#include "pmi/errors.hpp"

namespace pmi {

ExtMatrix ExtMatrix::identity(std::size_t n) {
  ExtMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExtMatrix ExtMatrix::from_rows(const std::vector<std::vector<ExtRational>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  ExtMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool ExtMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

bool ExtMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

ExtMatrix ExtMatrix::transpose() const {
  ExtMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

ExtMatrix& ExtMatrix::operator+=(const ExtMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExtMatrix& ExtMatrix::operator-=(const ExtMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExtMatrix& ExtMatrix::operator*=(const ExtRational& c) {
  for (auto& v : data_) v *= c;
  return *this;
}

ExtMatrix operator*(const ExtMatrix& a, const ExtMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product size mismatch");
  ExtMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ExtRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> ExtMatrix::to_doubles() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& v : data_) out.push_back(v.to_double());
  return out;
}

ExtRational determinant(const ExtMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of non-square matrix");
  std::size_t n = m.rows();
  ExtMatrix a = m;
  ExtRational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return ExtRational();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    ExtRational inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      ExtRational f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

namespace {

void require_symmetric(const ExtMatrix& m) {
  if (!m.is_symmetric()) throw InputError("matrix is not symmetric");
}

ExtMatrix principal_submatrix(const ExtMatrix& m, const std::vector<std::size_t>& idx) {
  ExtMatrix s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = m(idx[i], idx[j]);
  }
  return s;
}

}  // namespace

bool psd_exact(const RationalSymMatrix& m, bool strict) {
  require_symmetric(m);
  std::size_t n = m.rows();
  if (n > kMaxExactMinorSize) {
    throw InputError("matrix of size " + std::to_string(n) + " exceeds the exact minor limit of " +
                     std::to_string(kMaxExactMinorSize));
  }
  if (strict) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      if (determinant(principal_submatrix(m, idx)).sign() <= 0) return false;
    }
    return true;
  }
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    }
    if (determinant(principal_submatrix(m, idx)).sign() < 0) return false;
  }
  return true;
}

LdltResult ldlt_exact(const RationalSymMatrix& m) {
  require_symmetric(m);
  std::size_t n = m.rows();
  LdltResult res;
  res.perm.resize(n);
  std::iota(res.perm.begin(), res.perm.end(), 0);
  res.lower = ExtMatrix::identity(n);
  res.diag.assign(n, ExtRational());
  ExtMatrix a = m;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i) {
      int s = a(i, i).sign();
      if (s < 0) return res;
      if (s > 0 && p == n) p = i;
    }
    if (p == n) {
      // Remaining diagonal is zero; PSD forces the whole trailing block to vanish.
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (!a(i, j).is_zero()) return res;
        }
      }
      res.psd = true;
      return res;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
      for (std::size_t j = 0; j < k; ++j) std::swap(res.lower(k, j), res.lower(p, j));
      std::swap(res.perm[k], res.perm[p]);
    }
    const ExtRational pivot = a(k, k);
    res.diag[k] = pivot;
    ExtRational inv = pivot.inverse();
    for (std::size_t i = k + 1; i < n; ++i) res.lower(i, k) = a(i, k) * inv;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = k + 1; j <= i; ++j) {
        a(i, j) -= res.lower(i, k) * a(k, j);
        if (j != i) a(j, i) = a(i, j);
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) = ExtRational();
      a(k, i) = ExtRational();
    }
  }
  res.psd = true;
  return res;
}

bool psd_ldlt(const RationalSymMatrix& m, bool strict) {
  LdltResult r = ldlt_exact(m);
  if (!r.psd) return false;
  if (!strict) return true;
  for (const auto& d : r.diag) {
    if (d.sign() <= 0) return false;
  }
  return true;
}

ExtMatrix inverse(const ExtMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of non-square matrix");
  std::size_t n = m.rows();
  ExtMatrix a = m;
  ExtMatrix inv = ExtMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) throw InputError("singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    ExtRational pinv = a(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= pinv;
      inv(k, j) *= pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      ExtRational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace pmi
