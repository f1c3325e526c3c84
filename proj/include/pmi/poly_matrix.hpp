#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pmi/exact_matrix.hpp"
#include "pmi/polynomial.hpp"

namespace pmi {

// Dense rows x cols matrix of polynomials in a common number of variables.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix identity(std::size_t n, std::size_t nvars);
  static PolyMatrix unit_column(std::size_t m, std::size_t i, std::size_t nvars);
  static PolyMatrix constant(const ExtMatrix& c, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  unsigned degree() const;
  bool is_zero() const;
  bool is_symmetric() const;
  PolyMatrix transpose() const;
  PolyMatrix column(std::size_t j) const;

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  PolyMatrix& operator*=(const ExtRational& c);
  PolyMatrix& operator*=(const Polynomial& p);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.data_ == b.data_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  ExtMatrix evaluate(const std::vector<ExtRational>& point) const;
  std::vector<double> evaluate(const std::vector<double>& point) const;  // row-major

  PolyMatrix homogenize(unsigned target_degree) const;
  PolyMatrix dehomogenize() const;
  PolyMatrix embed(std::size_t new_nvars, std::size_t offset) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Polynomial> data_;
};

// Square polynomial matrix whose symmetry is checked on construction.
class SymPolyMatrix {
 public:
  SymPolyMatrix() = default;
  SymPolyMatrix(std::size_t size, std::size_t nvars) : m_(size, size, nvars) {}
  explicit SymPolyMatrix(PolyMatrix m);

  static SymPolyMatrix scalar(const Polynomial& p);
  static SymPolyMatrix identity(std::size_t n, std::size_t nvars);
  static SymPolyMatrix diagonal(const std::vector<Polynomial>& entries);

  std::size_t size() const { return m_.rows(); }
  std::size_t nvars() const { return m_.nvars(); }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  // Sets entries (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const Polynomial& p);
  const PolyMatrix& matrix() const { return m_; }
  unsigned degree() const { return m_.degree(); }
  bool is_zero() const { return m_.is_zero(); }

  SymPolyMatrix& operator+=(const SymPolyMatrix& o);
  SymPolyMatrix& operator-=(const SymPolyMatrix& o);
  friend SymPolyMatrix operator+(SymPolyMatrix a, const SymPolyMatrix& b) { return a += b; }
  friend SymPolyMatrix operator-(SymPolyMatrix a, const SymPolyMatrix& b) { return a -= b; }
  SymPolyMatrix scaled(const ExtRational& c) const;
  SymPolyMatrix scaled(const Polynomial& p) const;
  friend bool operator==(const SymPolyMatrix& a, const SymPolyMatrix& b) { return a.m_ == b.m_; }
  friend bool operator!=(const SymPolyMatrix& a, const SymPolyMatrix& b) { return !(a == b); }

  RationalSymMatrix evaluate(const std::vector<ExtRational>& point) const;
  std::vector<double> evaluate(const std::vector<double>& point) const;

  SymPolyMatrix homogenize(unsigned target_degree) const;
  SymPolyMatrix dehomogenize() const;

 private:
  PolyMatrix m_;
};

// P^T G P for P of size m x l and G of size m x m.
SymPolyMatrix congruence(const PolyMatrix& p, const SymPolyMatrix& g);

// Sum of squares of variables ||x||^2.
Polynomial squared_norm(std::size_t nvars);

}  // namespace pmi
