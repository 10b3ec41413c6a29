#include "romscat/inversion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "romscat/errors.hpp"
#include "romscat/log.hpp"

namespace romscat {

namespace {
constexpr Complex kI{0.0, 1.0};
}

LSKernel assemble_kernel(const std::vector<StateField>& ref_states,
                         const std::vector<StateEstimate>& est_states,
                         const BoundarySpectrum& spectrum, const BoundarySpectrum& ref_spectrum,
                         const PotentialModel& qbasis, const SpatialGrid& grid) {
    const int m = spectrum.size();
    if (static_cast<int>(ref_states.size()) != m || static_cast<int>(est_states.size()) != m ||
        ref_spectrum.size() != m)
        throw validation_error("assemble_kernel: state lists must align with the wavenumber grid");
    const int nn = grid.node_count();
    for (int i = 0; i < m; ++i) {
        if (ref_states[static_cast<std::size_t>(i)].values.size() != nn ||
            est_states[static_cast<std::size_t>(i)].values.size() != nn)
            throw validation_error("assemble_kernel: state/grid size mismatch");
    }

    Eigen::VectorXd w = Eigen::VectorXd::Constant(nn, grid.h);
    w[0] = 0.5 * grid.h;
    w[nn - 1] = 0.5 * grid.h;

    const int nq = qbasis.size();
    Eigen::MatrixXcd P(nn, nq);
    for (int l = 0; l < nn; ++l)
        for (int j = 0; j < nq; ++j)
            P(l, j) = qbasis.basis_value(j, grid.nodes[static_cast<std::size_t>(l)]);

    LSKernel kern;
    kern.qbasis = qbasis;
    kern.K.resize(m, nq);
    kern.rhs = spectrum.f - ref_spectrum.f;
    for (int i = 0; i < m; ++i) {
        const double k = spectrum.k[i];
        const Eigen::VectorXcd prod = w.array() *
                                      ref_states[static_cast<std::size_t>(i)].values.array() *
                                      est_states[static_cast<std::size_t>(i)].values.array();
        kern.K.row(i) = (P.transpose() * prod).transpose() / (2.0 * kI * k);
    }
    return kern;
}

PotentialModel tikhonov_solve(const LSKernel& kernel, double alpha) {
    if (alpha < 0.0) throw validation_error("tikhonov_solve: alpha must be nonnegative");
    const int m = static_cast<int>(kernel.K.rows());
    const int nq = static_cast<int>(kernel.K.cols());

    // Real coefficients by construction: stack the real and imaginary parts.
    Eigen::MatrixXd A(2 * m + (alpha > 0.0 ? nq : 0), nq);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(A.rows());
    A.topRows(m) = kernel.K.real();
    A.middleRows(m, m) = kernel.K.imag();
    rhs.head(m) = kernel.rhs.real();
    rhs.segment(m, m) = kernel.rhs.imag();
    if (alpha > 0.0)
        A.bottomRows(nq) = std::sqrt(alpha) * Eigen::MatrixXd::Identity(nq, nq);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-12);
    if (alpha == 0.0 && cod.rank() < nq)
        warn("tikhonov_solve: rank-deficient kernel at alpha=0 (rank " +
             std::to_string(cod.rank()) + " of " + std::to_string(nq) +
             "); using the minimum-norm solution");
    const Eigen::VectorXd dq = cod.solve(rhs);
    return kernel.qbasis.with_coefficients(dq);
}

Eigen::VectorXd project_cell_averages(const Eigen::VectorXd& values_on_grid,
                                      const SpatialGrid& grid, int n_cells) {
    if (values_on_grid.size() != grid.node_count())
        throw validation_error("project_cell_averages: values/grid size mismatch");
    if (n_cells < 1 || grid.cells % n_cells != 0)
        throw validation_error("project_cell_averages: grid cells must be a multiple of n_cells");
    const int stride = grid.cells / n_cells;
    Eigen::VectorXd avg(n_cells);
    for (int j = 0; j < n_cells; ++j) {
        double s = 0.5 * (values_on_grid[j * stride] + values_on_grid[(j + 1) * stride]);
        for (int l = 1; l < stride; ++l) s += values_on_grid[j * stride + l];
        avg[j] = s / stride;
    }
    return avg;
}

}  // namespace romscat
