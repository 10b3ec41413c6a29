#ifndef ROMSCAT_INVERSION_HPP
#define ROMSCAT_INVERSION_HPP

#include <vector>

#include <Eigen/Core>

#include "romscat/estimate.hpp"
#include "romscat/forward.hpp"
#include "romscat/potential.hpp"

namespace romscat {

// Linearized scattering system: row i relates the data residual f_i - f0_i to
// the potential perturbation through K_ij = (1/(2ik_i)) int u0_i u~_i phi_j dx.
struct LSKernel {
    Eigen::MatrixXcd K;      // m x n_q
    Eigen::VectorXcd rhs;    // f - f0
    PotentialModel qbasis;   // basis the columns are built against
};

LSKernel assemble_kernel(const std::vector<StateField>& ref_states,
                         const std::vector<StateEstimate>& est_states,
                         const BoundarySpectrum& spectrum, const BoundarySpectrum& ref_spectrum,
                         const PotentialModel& qbasis, const SpatialGrid& grid);

// Tikhonov-regularized real least squares,
//   min over real dq of |K dq - rhs|^2 + alpha |dq|^2,
// solved by stacking Re/Im rows into a real system. Returns the perturbation
// dq in the kernel basis; the full reconstruction is q0 + dq.
PotentialModel tikhonov_solve(const LSKernel& kernel, double alpha);

/// Projection of a potential onto a piecewise-constant basis by cell averages
/// (trapezoid within each cell on the given grid).
Eigen::VectorXd project_cell_averages(const Eigen::VectorXd& values_on_grid,
                                      const SpatialGrid& grid, int n_cells);

}  // namespace romscat

#endif
