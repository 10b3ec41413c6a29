#include "romscat/potential.hpp"

#include <cmath>
#include <string>

#include "romscat/errors.hpp"

namespace romscat {

PotentialModel PotentialModel::zero() {
    PotentialModel p;
    p.kind_ = BasisKind::PiecewiseConstant;
    p.coeff_ = Eigen::VectorXd::Zero(1);
    p.margin_ = 0.0;
    return p;
}

PotentialModel PotentialModel::gaussian_bumps(const std::vector<double>& amplitudes,
                                              const std::vector<GaussianBump>& bumps,
                                              double support_margin) {
    if (amplitudes.size() != bumps.size())
        throw validation_error("potential: amplitude count must match bump count");
    if (support_margin < 0.0 || support_margin >= 0.5)
        throw validation_error("potential: support margin must lie in [0, 0.5)");
    for (const auto& b : bumps)
        if (!(b.width > 0.0)) throw validation_error("potential: bump width must be positive");
    PotentialModel p;
    p.kind_ = BasisKind::GaussianBumps;
    p.coeff_ = Eigen::Map<const Eigen::VectorXd>(amplitudes.data(),
                                                 static_cast<long>(amplitudes.size()));
    p.bumps_ = bumps;
    p.margin_ = support_margin;
    return p;
}

PotentialModel PotentialModel::piecewise_constant(const Eigen::VectorXd& cell_values,
                                                  double support_margin) {
    if (cell_values.size() < 1) throw validation_error("potential: need at least one cell");
    if (support_margin < 0.0 || support_margin >= 0.5)
        throw validation_error("potential: support margin must lie in [0, 0.5)");
    PotentialModel p;
    p.kind_ = BasisKind::PiecewiseConstant;
    p.coeff_ = cell_values;
    p.margin_ = support_margin;
    return p;
}

double PotentialModel::basis_value(int j, double x) const {
    if (j < 0 || j >= size()) throw validation_error("potential: basis index out of range");
    if (margin_ > 0.0 && (x < margin_ || x > 1.0 - margin_)) return 0.0;
    if (kind_ == BasisKind::GaussianBumps) {
        const auto& b = bumps_[static_cast<std::size_t>(j)];
        const double t = (x - b.center) / b.width;
        return std::exp(-0.5 * t * t);
    }
    // piecewise constant on uniform cells of (0,1); internal boundaries belong
    // to the right cell
    const int nq = size();
    int cell = static_cast<int>(std::floor(x * nq));
    if (cell < 0) cell = 0;
    if (cell >= nq) cell = nq - 1;
    return cell == j ? 1.0 : 0.0;
}

double PotentialModel::operator()(double x) const {
    if (margin_ > 0.0 && (x < margin_ || x > 1.0 - margin_)) return 0.0;
    if (kind_ == BasisKind::GaussianBumps) {
        double v = 0.0;
        for (int j = 0; j < size(); ++j) {
            const auto& b = bumps_[static_cast<std::size_t>(j)];
            const double t = (x - b.center) / b.width;
            v += coeff_[j] * std::exp(-0.5 * t * t);
        }
        return v;
    }
    const int nq = size();
    int cell = static_cast<int>(std::floor(x * nq));
    if (cell < 0) cell = 0;
    if (cell >= nq) cell = nq - 1;
    return coeff_[cell];
}

Eigen::VectorXd PotentialModel::evaluate(const SpatialGrid& grid) const {
    Eigen::VectorXd v(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
        const double q = (*this)(grid.nodes[static_cast<std::size_t>(i)]);
        if (!std::isfinite(q))
            throw numerical_error("potential: non-finite value at node " + std::to_string(i));
        v[i] = q;
    }
    return v;
}

PotentialModel PotentialModel::with_coefficients(const Eigen::VectorXd& coeff) const {
    if (coeff.size() != coeff_.size())
        throw validation_error("potential: coefficient count mismatch");
    PotentialModel p = *this;
    p.coeff_ = coeff;
    return p;
}

PotentialModel default_true_potential() {
    return PotentialModel::gaussian_bumps({4.0}, {GaussianBump{0.5, 0.08}}, 0.1);
}

}  // namespace romscat
