#include "romscat/lanczos.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "romscat/errors.hpp"

namespace romscat {

namespace {
constexpr double kBreakdownTol = 1e-10;  // relative to the normalized start
}

LanczosFactor lanczos_m_orthogonal(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& M,
                                   double epsilon, const Eigen::VectorXcd& start) {
    const int m = static_cast<int>(S.rows());
    if (S.cols() != m || M.rows() != m || M.cols() != m)
        throw validation_error("lanczos: S and M must be square and of equal size");
    if (start.size() != m) throw validation_error("lanczos: start vector size mismatch");
    if (epsilon < 0.0) throw validation_error("lanczos: epsilon must be nonnegative");

    const Eigen::MatrixXcd N =
        M + epsilon * Eigen::MatrixXcd::Identity(m, m);
    Eigen::LLT<Eigen::MatrixXcd> llt(N);
    if (llt.info() != Eigen::Success)
        throw numerical_error(
            "lanczos: M+epsilon*I is not positive definite; increase epsilon (epsilon=" +
            std::to_string(epsilon) + ")");

    auto n_norm = [&](const Eigen::VectorXcd& v) {
        return std::sqrt(std::max(0.0, v.dot(N * v).real()));
    };

    const double start_norm = n_norm(start);
    if (!(start_norm > 0.0)) throw validation_error("lanczos: start vector must be nonzero");

    Eigen::MatrixXcd Q(m, m);
    Eigen::VectorXd alpha(m), beta(m);
    Q.col(0) = start / start_norm;

    int rank = m;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd z = llt.solve(S * Q.col(j));
        // <z, q_j>_N reduces to q_j^* S q_j, real for Hermitian S
        alpha[j] = Q.col(j).dot(S * Q.col(j)).real();
        z -= alpha[j] * Q.col(j);
        if (j > 0) z -= beta[j - 1] * Q.col(j - 1);
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXcd proj = Q.leftCols(j + 1).adjoint() * (N * z);
            z -= Q.leftCols(j + 1) * proj;
        }
        const double b = n_norm(z);
        if (j + 1 == m) break;
        if (b < kBreakdownTol) {
            rank = j + 1;
            break;
        }
        beta[j] = b;
        Q.col(j + 1) = z / b;
    }

    LanczosFactor out;
    out.rank = rank;
    out.epsilon = epsilon;
    out.Q = Q.leftCols(rank);
    out.T = Eigen::MatrixXcd::Zero(rank, rank);
    for (int j = 0; j < rank; ++j) out.T(j, j) = alpha[j];
    for (int j = 0; j + 1 < rank; ++j) {
        out.T(j, j + 1) = beta[j];
        out.T(j + 1, j) = beta[j];
    }
    return out;
}

}  // namespace romscat
