#include "romscat/forward.hpp"

#include <cmath>
#include <string>

#include "romscat/errors.hpp"

namespace romscat {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPivotTol = 1e-12;

struct Tridiag {
    Eigen::VectorXcd lower, diag, upper;  // sizes n, n+1, n for n+1 unknowns
};

// System for -u'' + (q - k^2) u = rhs with the impedance rows halved, so each
// row is the weak form against the hat function at that node scaled by 1/h.
Tridiag build_system(const Eigen::VectorXd& qv, double k, double h) {
    const int nn = static_cast<int>(qv.size());  // node count
    Tridiag t;
    t.lower.resize(nn - 1);
    t.diag.resize(nn);
    t.upper.resize(nn - 1);
    const double ih2 = 1.0 / (h * h);
    for (int i = 0; i + 1 < nn; ++i) {
        t.lower[i] = -ih2;
        t.upper[i] = -ih2;
    }
    for (int i = 1; i + 1 < nn; ++i) t.diag[i] = 2.0 * ih2 + qv[i] - k * k;
    const Complex robin = ih2 - kI * k / h;
    t.diag[0] = robin + 0.5 * (qv[0] - k * k);
    t.diag[nn - 1] = robin + 0.5 * (qv[nn - 1] - k * k);
    return t;
}

// Thomas elimination with a scaled pivot guard: a pivot below 1e-12 of its
// row magnitude signals a discretely resonant wavenumber.
Eigen::VectorXcd solve_tridiag(const Tridiag& t, Eigen::VectorXcd rhs, double k) {
    const int nn = static_cast<int>(t.diag.size());
    Eigen::VectorXcd d = t.diag;
    auto row_scale = [&](int i) {
        double s = std::abs(t.diag[i]);
        if (i > 0) s += std::abs(t.lower[i - 1]);
        if (i + 1 < nn) s += std::abs(t.upper[i]);
        return s;
    };
    auto check_pivot = [&](int i) {
        if (std::abs(d[i]) < kPivotTol * row_scale(i))
            throw numerical_error("resonant wavenumber: singular discrete system at k=" +
                                  std::to_string(k));
    };
    for (int i = 1; i < nn; ++i) {
        check_pivot(i - 1);
        const Complex m = t.lower[i - 1] / d[i - 1];
        d[i] -= m * t.upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    check_pivot(nn - 1);
    Eigen::VectorXcd u(nn);
    u[nn - 1] = rhs[nn - 1] / d[nn - 1];
    for (int i = nn - 2; i >= 0; --i) u[i] = (rhs[i] - t.upper[i] * u[i + 1]) / d[i];
    return u;
}

void require_positive_k(double k) {
    if (!(k > 0.0)) throw validation_error("wavenumber must be positive, got " + std::to_string(k));
}

}  // namespace

void BoundarySpectrum::validate() const {
    const int m = size();
    if (m < 1) throw validation_error("spectrum: empty wavenumber set");
    if (f.size() != m || g.size() != m || fprime.size() != m || gprime.size() != m)
        throw validation_error("spectrum: data vectors must all have length m");
    for (int i = 0; i < m; ++i) {
        if (!(k[i] > 0.0)) throw validation_error("spectrum: wavenumbers must be positive");
        if (i > 0 && !(k[i] > k[i - 1]))
            throw validation_error("spectrum: wavenumbers must be strictly increasing");
        if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag()) ||
            !std::isfinite(g[i].real()) || !std::isfinite(g[i].imag()) ||
            !std::isfinite(fprime[i].real()) || !std::isfinite(fprime[i].imag()) ||
            !std::isfinite(gprime[i].real()) || !std::isfinite(gprime[i].imag()))
            throw validation_error("spectrum: non-finite data at index " + std::to_string(i));
    }
}

StateField solve_bvp(const PotentialModel& q, double k, const SpatialGrid& grid) {
    require_positive_k(k);
    const Eigen::VectorXd qv = q.evaluate(grid);
    const Tridiag t = build_system(qv, k, grid.h);

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(grid.node_count());
    rhs[0] = -2.0 * kI * k / grid.h;

    StateField u;
    u.k = k;
    u.values = solve_tridiag(t, std::move(rhs), k);
    return u;
}

std::pair<Complex, Complex> boundary_trace(const StateField& u) {
    if (u.values.size() < 2) throw validation_error("boundary_trace: state too short");
    return {u.values[0], u.values[u.values.size() - 1]};
}

StateField solve_sensitivity(const PotentialModel& q, double k, const StateField& u,
                             const SpatialGrid& grid) {
    require_positive_k(k);
    if (u.values.size() != grid.node_count())
        throw validation_error("solve_sensitivity: state/grid size mismatch");
    const Eigen::VectorXd qv = q.evaluate(grid);
    const Tridiag t = build_system(qv, k, grid.h);
    const int nn = grid.node_count();
    const double h = grid.h;

    // Exact k-derivative of the discrete system: rhs' - (dA/dk) u.
    Eigen::VectorXcd rhs(nn);
    for (int i = 1; i + 1 < nn; ++i) rhs[i] = 2.0 * k * u.values[i];
    rhs[0] = k * u.values[0] + kI * u.values[0] / h - 2.0 * kI / h;
    rhs[nn - 1] = k * u.values[nn - 1] + kI * u.values[nn - 1] / h;

    StateField w;
    w.k = k;
    w.values = solve_tridiag(t, std::move(rhs), k);
    return w;
}

std::vector<StateField> solve_states(const PotentialModel& q, const std::vector<double>& ks,
                                     const SpatialGrid& grid) {
    std::vector<StateField> states;
    states.reserve(ks.size());
    for (double k : ks) states.push_back(solve_bvp(q, k, grid));
    return states;
}

BoundarySpectrum generate_spectrum(const PotentialModel& q, const std::vector<double>& ks,
                                   const SpatialGrid& grid) {
    const int m = static_cast<int>(ks.size());
    if (m < 1) throw validation_error("generate_spectrum: empty wavenumber list");
    for (int i = 0; i < m; ++i) {
        if (!(ks[static_cast<std::size_t>(i)] > 0.0))
            throw validation_error("generate_spectrum: wavenumbers must be positive");
        if (i > 0 && !(ks[static_cast<std::size_t>(i)] > ks[static_cast<std::size_t>(i - 1)]))
            throw validation_error("generate_spectrum: wavenumbers must be strictly increasing");
    }

    BoundarySpectrum s;
    s.k.resize(m);
    s.f.resize(m);
    s.g.resize(m);
    s.fprime.resize(m);
    s.gprime.resize(m);
    for (int i = 0; i < m; ++i) {
        const double k = ks[static_cast<std::size_t>(i)];
        try {
            const StateField u = solve_bvp(q, k, grid);
            const StateField w = solve_sensitivity(q, k, u, grid);
            std::tie(s.f[i], s.g[i]) = boundary_trace(u);
            std::tie(s.fprime[i], s.gprime[i]) = boundary_trace(w);
        } catch (const numerical_error& e) {
            throw numerical_error("generate_spectrum at k=" + std::to_string(k) + ": " + e.what());
        }
        s.k[i] = k;
    }
    return s;
}

}  // namespace romscat
