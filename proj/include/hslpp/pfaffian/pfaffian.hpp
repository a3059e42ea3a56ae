#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hslpp::pfaffian {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// Pfaffian by Parlett-Reid skew tridiagonalisation with partial pivoting.
// Throws ParameterError for odd or non-square input and for matrices that are
// not skew-symmetric within `skew_tol` (relative to the largest entry).
double pfaffian(RealMatrix A, double skew_tol = 1e-12);
std::complex<double> pfaffian(ComplexMatrix A, double skew_tol = 1e-12);

}  // namespace hslpp::pfaffian
