#include "romscat/estimate.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "romscat/errors.hpp"
#include "romscat/log.hpp"

namespace romscat {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd state_matrix(const std::vector<StateField>& states) {
    if (states.empty()) throw validation_error("estimate: empty state list");
    const auto nn = states.front().values.size();
    Eigen::MatrixXcd U(nn, static_cast<long>(states.size()));
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states[j].values.size() != nn)
            throw validation_error("estimate: states live on different grids");
        U.col(static_cast<long>(j)) = states[j].values;
    }
    return U;
}

// Start vector conj(f), the k-independent direction of b(k). The Lanczos
// routine normalizes it in the (M+eI) inner product.
Eigen::VectorXcd lanczos_start(const RomSystem& rom) { return rom.f.conjugate(); }

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::LO: return "LO";
        case Method::DA: return "DA";
        case Method::BORN: return "BORN";
        case Method::TRUE: return "TRUE";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "LO" || s == "lo") return Method::LO;
    if (s == "DA" || s == "da") return Method::DA;
    if (s == "BORN" || s == "born") return Method::BORN;
    if (s == "TRUE" || s == "true") return Method::TRUE;
    throw validation_error("unknown method '" + s + "' (expected LO, DA, BORN or TRUE)");
}

StateEstimate lo_estimate(const RomSystem& data_rom, const RomSystem& ref_rom,
                          const std::vector<StateField>& ref_states, double epsilon, double k) {
    const int m = data_rom.size();
    if (ref_rom.size() != m || static_cast<int>(ref_states.size()) != m)
        throw validation_error("lo_estimate: data ROM, reference ROM and states must agree in m");
    if ((data_rom.k - ref_rom.k).cwiseAbs().maxCoeff() > 1e-12 * data_rom.k[m - 1])
        throw validation_error("lo_estimate: data and reference wavenumber grids differ");
    if (!(k > 0.0)) throw validation_error("lo_estimate: wavenumber must be positive");

    const LanczosFactor fd =
        lanczos_m_orthogonal(data_rom.S, data_rom.M, epsilon, lanczos_start(data_rom));
    const LanczosFactor fr =
        lanczos_m_orthogonal(ref_rom.S, ref_rom.M, epsilon, lanczos_start(ref_rom));

    int r = fd.rank;
    if (fd.rank != fr.rank) {
        r = std::min(fd.rank, fr.rank);
        warn("lo_estimate: Lanczos rank mismatch (data " + std::to_string(fd.rank) +
             ", reference " + std::to_string(fr.rank) + "); truncating to " + std::to_string(r));
    }

    const Eigen::MatrixXcd Qd = fd.Q.leftCols(r);
    const Eigen::MatrixXcd A = fd.T.topLeftCorner(r, r) -
                               (k * k) * Eigen::MatrixXcd::Identity(r, r) -
                               (kI * k) * (Qd.adjoint() * data_rom.B * Qd);
    const Eigen::VectorXcd rhs = Qd.adjoint() * data_rom.bvec(k);

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd y = lu.solve(rhs);
    if ((A * y - rhs).norm() > 1e-8 * rhs.norm())
        throw numerical_error("lo_estimate: reduced system is near-singular at k=" +
                              std::to_string(k));

    StateEstimate est;
    est.k = k;
    est.tag = Method::LO;
    est.coefficients = y;
    est.values = state_matrix(ref_states) * (fr.Q.leftCols(r) * y);
    return est;
}

StateEstimate da_estimate(const RomSystem& data_rom, const BoundarySpectrum& ref_spectrum,
                          const std::vector<StateField>& ref_states, double rho, double k,
                          Complex fk, Complex gk) {
    const int m = data_rom.size();
    if (ref_spectrum.size() != m || static_cast<int>(ref_states.size()) != m)
        throw validation_error("da_estimate: data ROM and reference data must agree in m");
    if (!(rho > 0.0)) throw validation_error("da_estimate: rho must be positive");
    if (!(k > 0.0)) throw validation_error("da_estimate: wavenumber must be positive");

    Eigen::MatrixXcd A(m + 2, m);
    A.topRows(m) = data_rom.system_at(k);
    A.row(m) = rho * ref_spectrum.f.transpose();
    A.row(m + 1) = rho * ref_spectrum.g.transpose();

    Eigen::VectorXcd rhs(m + 2);
    rhs.head(m) = data_rom.bvec(k);
    rhs[m] = rho * fk;
    rhs[m + 1] = rho * gk;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    cod.setThreshold(1e-12);
    if (cod.rank() < m)
        warn("da_estimate: rank-deficient stacked system at k=" + std::to_string(k) +
             " (rank " + std::to_string(cod.rank()) + " of " + std::to_string(m) +
             "); using the minimum-norm solution");
    const Eigen::VectorXcd c = cod.solve(rhs);

    StateEstimate est;
    est.k = k;
    est.tag = Method::DA;
    est.coefficients = c;
    est.values = state_matrix(ref_states) * c;
    return est;
}

StateEstimate born_estimate(const std::vector<StateField>& ref_states, int k_index) {
    if (k_index < 0 || k_index >= static_cast<int>(ref_states.size()))
        throw validation_error("born_estimate: wavenumber index out of range");
    const auto& s = ref_states[static_cast<std::size_t>(k_index)];
    StateEstimate est;
    est.k = s.k;
    est.tag = Method::BORN;
    est.values = s.values;
    est.coefficients = Eigen::VectorXcd::Unit(static_cast<long>(ref_states.size()), k_index);
    return est;
}

StateEstimate true_estimate(const std::vector<StateField>& true_states, int k_index) {
    StateEstimate est = born_estimate(true_states, k_index);
    est.tag = Method::TRUE;
    return est;
}

}  // namespace romscat
