#include "pmi/poly_matrix.hpp"

#include <algorithm>

#include "pmi/errors.hpp"

namespace pmi {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Polynomial(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
  PolyMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::unit_column(std::size_t m, std::size_t i, std::size_t nvars) {
  if (i >= m) throw InputError("unit column index out of range");
  PolyMatrix v(m, 1, nvars);
  v(i, 0) = Polynomial::constant(nvars, 1);
  return v;
}

PolyMatrix PolyMatrix::constant(const ExtMatrix& c, std::size_t nvars) {
  PolyMatrix m(c.rows(), c.cols(), nvars);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, j) = Polynomial::constant(nvars, c(i, j));
  }
  return m;
}

unsigned PolyMatrix::degree() const {
  unsigned d = 0;
  for (const auto& p : data_) d = std::max(d, p.degree());
  return d;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

PolyMatrix PolyMatrix::column(std::size_t j) const {
  PolyMatrix c(rows_, 1, nvars_);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const ExtRational& c) {
  for (auto& p : data_) p *= c;
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Polynomial& q) {
  for (auto& p : data_) p *= q;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw InputError("matrix product size mismatch: " + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_));
  }
  PolyMatrix out(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ExtMatrix PolyMatrix::evaluate(const std::vector<ExtRational>& point) const {
  ExtMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
  }
  return m;
}

std::vector<double> PolyMatrix::evaluate(const std::vector<double>& point) const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& p : data_) out.push_back(p.evaluate(point));
  return out;
}

PolyMatrix PolyMatrix::homogenize(unsigned target_degree) const {
  PolyMatrix out(rows_, cols_, nvars_ + 1);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].homogenize(target_degree);
  return out;
}

PolyMatrix PolyMatrix::dehomogenize() const {
  if (nvars_ == 0) throw InputError("no variable to dehomogenize");
  PolyMatrix out(rows_, cols_, nvars_ - 1);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].dehomogenize();
  return out;
}

PolyMatrix PolyMatrix::embed(std::size_t new_nvars, std::size_t offset) const {
  PolyMatrix out(rows_, cols_, new_nvars);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].embed(new_nvars, offset);
  return out;
}

SymPolyMatrix::SymPolyMatrix(PolyMatrix m) : m_(std::move(m)) {
  if (!m_.is_symmetric()) throw InputError("polynomial matrix is not symmetric");
}

SymPolyMatrix SymPolyMatrix::scalar(const Polynomial& p) {
  SymPolyMatrix s(1, p.nvars());
  s.set(0, 0, p);
  return s;
}

SymPolyMatrix SymPolyMatrix::identity(std::size_t n, std::size_t nvars) {
  return SymPolyMatrix(PolyMatrix::identity(n, nvars));
}

SymPolyMatrix SymPolyMatrix::diagonal(const std::vector<Polynomial>& entries) {
  if (entries.empty()) throw InputError("empty diagonal");
  SymPolyMatrix s(entries.size(), entries[0].nvars());
  for (std::size_t i = 0; i < entries.size(); ++i) s.set(i, i, entries[i]);
  return s;
}

void SymPolyMatrix::set(std::size_t i, std::size_t j, const Polynomial& p) {
  if (i >= size() || j >= size()) throw InputError("matrix index out of range");
  if (p.nvars() != nvars()) throw InputError("variable count mismatch in matrix entry");
  m_(i, j) = p;
  m_(j, i) = p;
}

SymPolyMatrix& SymPolyMatrix::operator+=(const SymPolyMatrix& o) {
  m_ += o.m_;
  return *this;
}

SymPolyMatrix& SymPolyMatrix::operator-=(const SymPolyMatrix& o) {
  m_ -= o.m_;
  return *this;
}

SymPolyMatrix SymPolyMatrix::scaled(const ExtRational& c) const {
  SymPolyMatrix out = *this;
  out.m_ *= c;
  return out;
}

SymPolyMatrix SymPolyMatrix::scaled(const Polynomial& p) const {
  SymPolyMatrix out = *this;
  out.m_ *= p;
  return out;
}

RationalSymMatrix SymPolyMatrix::evaluate(const std::vector<ExtRational>& point) const {
  RationalSymMatrix out(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i; j < size(); ++j) {
      out(i, j) = m_(i, j).evaluate(point);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

std::vector<double> SymPolyMatrix::evaluate(const std::vector<double>& point) const {
  return m_.evaluate(point);
}

SymPolyMatrix SymPolyMatrix::homogenize(unsigned target_degree) const {
  SymPolyMatrix out;
  out.m_ = m_.homogenize(target_degree);
  return out;
}

SymPolyMatrix SymPolyMatrix::dehomogenize() const {
  SymPolyMatrix out;
  out.m_ = m_.dehomogenize();
  return out;
}

SymPolyMatrix congruence(const PolyMatrix& p, const SymPolyMatrix& g) {
  if (p.rows() != g.size()) {
    throw InputError("congruence size mismatch: P has " + std::to_string(p.rows()) +
                     " rows, G has size " + std::to_string(g.size()));
  }
  if (p.nvars() != g.nvars()) throw InputError("variable count mismatch in congruence");
  PolyMatrix gp = g.matrix() * p;
  std::size_t l = p.cols();
  SymPolyMatrix out(l, p.nvars());
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      Polynomial s(p.nvars());
      for (std::size_t k = 0; k < p.rows(); ++k) {
        if (!p(k, i).is_zero() && !gp(k, j).is_zero()) s += p(k, i) * gp(k, j);
      }
      out.set(i, j, s);
    }
  }
  return out;
}

Polynomial squared_norm(std::size_t nvars) {
  Polynomial s(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    Exponent e(nvars, 0);
    e[i] = 2;
    s.add_term(e, 1);
  }
  return s;
}

}  // namespace pmi
