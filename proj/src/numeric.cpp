#include "pmi/numeric.hpp"

#include <cmath>

#include "pmi/errors.hpp"

namespace pmi {

Eigen::MatrixXd to_eigen(const ExtMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
    }
  }
  return out;
}

namespace {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues of non-square matrix");
  if (!m.allFinite()) throw InputError("non-finite matrix entry");
  if (m.rows() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InputError("eigenvalue iteration failed");
  return solver.eigenvalues();
}

}  // namespace

double min_eigenvalue_numeric(const Eigen::MatrixXd& m, double tol) {
  (void)tol;
  Eigen::VectorXd ev = symmetric_eigenvalues(m);
  if (ev.size() == 0) return 0.0;
  return ev(0);
}

double spectral_norm_symmetric(const Eigen::MatrixXd& m) {
  Eigen::VectorXd ev = symmetric_eigenvalues(m);
  if (ev.size() == 0) return 0.0;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace pmi
