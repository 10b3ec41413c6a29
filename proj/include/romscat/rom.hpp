#ifndef ROMSCAT_ROM_HPP
#define ROMSCAT_ROM_HPP

#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "romscat/forward.hpp"

namespace romscat {

// Galerkin system of the state equation projected on the snapshot span:
// S (stiffness + potential Gram), M (mass Gram), B (rank<=2 boundary Gram),
// plus the boundary data needed to form b(k) = -2ik conj(f) and to
// interpolate measurements.
struct RomSystem {
    Eigen::VectorXd k;
    Eigen::MatrixXcd S, M, B;
    Eigen::VectorXcd f, g;

    int size() const { return static_cast<int>(k.size()); }

    /// Right-hand side b(k), proportional to conj(f) for every k.
    Eigen::VectorXcd bvec(double kk) const;

    /// S - k^2 M - ik B.
    Eigen::MatrixXcd system_at(double kk) const;
};

struct RomCoefficients {
    double k = 0.0;
    Eigen::VectorXcd c;
};

// Data-driven assembly: S and M from the boundary data alone. Off-diagonal
// entries use the pairwise-wavenumber formulas, diagonals the k-derivative
// limits (which consume fprime/gprime).
RomSystem assemble_from_data(const BoundarySpectrum& spectrum);

// Direct Gram assembly from solved states, the verification oracle for
// assemble_from_data. Mass and potential terms by composite trapezoid on the
// grid nodes; the derivative Gram by centered differences at the cell
// midpoints with midpoint quadrature, which is the quadrature the solver's
// weak form uses.
RomSystem assemble_direct(const std::vector<StateField>& states, const PotentialModel& q,
                          const SpatialGrid& grid);

/// Solves (S - k^2 M - ik B) c = b(k).
RomCoefficients rom_solve(const RomSystem& rom, double k);

/// ROM-interpolated boundary data (f(k), g(k)) = (c.f, c.g).
std::pair<Complex, Complex> interpolate_data(const RomSystem& rom, double k);

// CSV persistence (real/imaginary parts interleaved), lossless at 17
// significant digits. Used for regression pinning.
void export_rom_csv(const RomSystem& rom, const std::filesystem::path& path);
RomSystem import_rom_csv(const std::filesystem::path& path);

}  // namespace romscat

#endif
