#ifndef ROMSCAT_FORWARD_HPP
#define ROMSCAT_FORWARD_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "romscat/grid.hpp"
#include "romscat/potential.hpp"

namespace romscat {

using Complex = std::complex<double>;

/// Complex state u(.;k) sampled on the grid nodes.
struct StateField {
    double k = 0.0;
    Eigen::VectorXcd values;
};

// Per-wavenumber boundary measurements f(k)=u(0;k), g(k)=u(1;k) together with
// their k-derivatives. This is the only input the inversion sees.
struct BoundarySpectrum {
    Eigen::VectorXd k;
    Eigen::VectorXcd f, g;
    Eigen::VectorXcd fprime, gprime;

    int size() const { return static_cast<int>(k.size()); }
    void validate() const;  // throws validation_error on malformed data
};

// Solves -u'' + q u - k^2 u = 0 on (0,1) with impedance conditions
// u'(0) + ik u(0) = 2ik and u'(1) - ik u(1) = 0.
// Second-order central differences, Robin closure by ghost-node elimination;
// the boundary rows are halved so the system matches the P1 weak form with
// trapezoid-lumped mass, which keeps the assembled Gram matrices consistent
// with the boundary-data formulas to machine precision.
StateField solve_bvp(const PotentialModel& q, double k, const SpatialGrid& grid);

/// (f, g) = (u(0), u(1)).
std::pair<Complex, Complex> boundary_trace(const StateField& u);

// Sensitivity state w = du/dk for the same (q, k): solves
// -w'' + q w - k^2 w = 2k u with w'(0) + ik w(0) = 2i - i u(0),
// w'(1) - ik w(1) = i u(1). The discrete system is the exact k-derivative of
// the solve_bvp system, so boundary traces of w are exact derivatives of the
// discrete f(k), g(k).
StateField solve_sensitivity(const PotentialModel& q, double k, const StateField& u,
                             const SpatialGrid& grid);

BoundarySpectrum generate_spectrum(const PotentialModel& q, const std::vector<double>& ks,
                                   const SpatialGrid& grid);

/// States u(.;k) for every k in ks.
std::vector<StateField> solve_states(const PotentialModel& q, const std::vector<double>& ks,
                                     const SpatialGrid& grid);

}  // namespace romscat

#endif
