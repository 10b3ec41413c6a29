#ifndef ROMSCAT_LANCZOS_HPP
#define ROMSCAT_LANCZOS_HPP

#include <Eigen/Core>

namespace romscat {

// (M+eI)-orthogonal Lanczos reduction of (M+eI)^{-1} S:
//   Q^* (M+eI) Q = I_r,   Q^* S Q = T tridiagonal,   r <= m.
struct LanczosFactor {
    Eigen::MatrixXcd Q;  // m x r
    Eigen::MatrixXcd T;  // r x r, real symmetric tridiagonal stored complex
    int rank = 0;
    double epsilon = 0.0;
};

// S, M Hermitian; M+eI must be positive definite. Runs with full
// reorthogonalization and stops at breakdown (new direction with
// (M+eI)-norm below 1e-10 relative to the normalized start).
LanczosFactor lanczos_m_orthogonal(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& M,
                                   double epsilon, const Eigen::VectorXcd& start);

}  // namespace romscat

#endif
