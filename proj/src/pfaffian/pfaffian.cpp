#include "hslpp/pfaffian/pfaffian.hpp"

#include <cmath>

#include "hslpp/core/errors.hpp"

namespace hslpp::pfaffian {

namespace {

template <class Mat>
typename Mat::Scalar parlett_reid(Mat& A, double skew_tol) {
    using T = typename Mat::Scalar;
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw ParameterError("Pfaffian needs a square matrix");
    if (n % 2 != 0) throw ParameterError("Pfaffian needs an even dimension");
    if (n == 0) return T(1);
    const double scale = A.cwiseAbs().maxCoeff();
    if ((A + A.transpose()).cwiseAbs().maxCoeff() > skew_tol * std::max(scale, 1.0))
        throw ParameterError("matrix is not skew-symmetric");

    // Direct expansions for the smallest sizes: exact for exactly representable products.
    if (n == 2) return A(0, 1);
    if (n == 4) return A(0, 1) * A(2, 3) - A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);

    T pf(1);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index rel = 0;
        A.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&rel);
        const Eigen::Index kp = k + 1 + rel;
        if (kp != k + 1) {
            A.row(k + 1).swap(A.row(kp));
            A.col(k + 1).swap(A.col(kp));
            pf = -pf;
        }
        if (A(k + 1, k) == T(0)) return T(0);
        pf *= A(k, k + 1);
        if (k + 2 < n) {
            const Eigen::Index m = n - k - 2;
            const Eigen::Matrix<T, Eigen::Dynamic, 1> tau = A.row(k).tail(m).transpose() / A(k, k + 1);
            const Eigen::Matrix<T, Eigen::Dynamic, 1> col = A.col(k + 1).tail(m);
            A.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

}  // namespace

double pfaffian(RealMatrix A, double skew_tol) { return parlett_reid(A, skew_tol); }

std::complex<double> pfaffian(ComplexMatrix A, double skew_tol) { return parlett_reid(A, skew_tol); }

}  // namespace hslpp::pfaffian
