#pragma once

#include <Eigen/Dense>

#include "pmi/exact_matrix.hpp"

namespace pmi {

Eigen::MatrixXd to_eigen(const ExtMatrix& m);

// Smallest eigenvalue of a symmetric matrix; throws InputError on non-finite entries.
// Eigen's symmetric solver converges far below tol at the sizes used here.
double min_eigenvalue_numeric(const Eigen::MatrixXd& m, double tol = 1e-12);

// Largest absolute eigenvalue of a symmetric matrix.
double spectral_norm_symmetric(const Eigen::MatrixXd& m);

}  // namespace pmi
