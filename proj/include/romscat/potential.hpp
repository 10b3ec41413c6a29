#ifndef ROMSCAT_POTENTIAL_HPP
#define ROMSCAT_POTENTIAL_HPP

#include <vector>

#include <Eigen/Core>

#include "romscat/grid.hpp"

namespace romscat {

enum class BasisKind { PiecewiseConstant, GaussianBumps };

struct GaussianBump {
    double center = 0.5;
    double width = 0.08;
};

// Real scattering potential on (0,1) in a finite basis. Values are clamped to
// zero within `support_margin` of either endpoint, so every model is compactly
// supported in (0,1) whenever the margin is positive.
class PotentialModel {
public:
    PotentialModel() = default;

    static PotentialModel zero();
    static PotentialModel gaussian_bumps(const std::vector<double>& amplitudes,
                                         const std::vector<GaussianBump>& bumps,
                                         double support_margin);
    static PotentialModel piecewise_constant(const Eigen::VectorXd& cell_values,
                                             double support_margin = 0.0);

    double operator()(double x) const;
    Eigen::VectorXd evaluate(const SpatialGrid& grid) const;

    /// Basis function j evaluated at x (support margin applied).
    double basis_value(int j, double x) const;

    BasisKind kind() const { return kind_; }
    int size() const { return static_cast<int>(coeff_.size()); }
    const Eigen::VectorXd& coefficients() const { return coeff_; }
    double support_margin() const { return margin_; }
    const std::vector<GaussianBump>& bumps() const { return bumps_; }

    /// Same basis, new coefficients.
    PotentialModel with_coefficients(const Eigen::VectorXd& coeff) const;

private:
    BasisKind kind_ = BasisKind::PiecewiseConstant;
    Eigen::VectorXd coeff_ = Eigen::VectorXd::Zero(1);
    std::vector<GaussianBump> bumps_;
    double margin_ = 0.0;
};

/// Default test potential: one Gaussian bump, amplitude 4 at x=0.5, width 0.08,
/// truncated outside [0.1, 0.9].
PotentialModel default_true_potential();

}  // namespace romscat

#endif
