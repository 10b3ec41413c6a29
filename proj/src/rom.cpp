#include "romscat/rom.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <Eigen/Dense>

#include "romscat/csv.hpp"
#include "romscat/errors.hpp"

namespace romscat {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Eigen::VectorXcd RomSystem::bvec(double kk) const { return -2.0 * kI * kk * f.conjugate(); }

Eigen::MatrixXcd RomSystem::system_at(double kk) const {
    return S - (kk * kk) * M - (kI * kk) * B;
}

RomSystem assemble_from_data(const BoundarySpectrum& sp) {
    sp.validate();
    const int m = sp.size();
    const double kmax = sp.k[m - 1];
    for (int i = 1; i < m; ++i)
        if (sp.k[i] - sp.k[i - 1] < 1e-8 * kmax)
            throw validation_error("assemble_from_data: near-coincident wavenumbers at index " +
                                   std::to_string(i));

    RomSystem rom;
    rom.k = sp.k;
    rom.f = sp.f;
    rom.g = sp.g;
    rom.S.resize(m, m);
    rom.M.resize(m, m);
    rom.B.resize(m, m);

    rom.B = sp.f.conjugate() * sp.f.transpose() + sp.g.conjugate() * sp.g.transpose();

    // Off-diagonals from the pairwise-wavenumber relations; the lower triangle
    // is mirrored so the matrices are Hermitian exactly.
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double ki = sp.k[i], kj = sp.k[j];
            const Complex bij = rom.B(i, j);
            const Complex fj = sp.f[j], fic = std::conj(sp.f[i]);
            const double dk = ki - kj, dk2 = ki * ki - kj * kj;
            rom.M(i, j) = kI * (bij / dk - 2.0 * (ki * fj + kj * fic) / dk2);
            rom.S(i, j) =
                kI * (ki * kj * bij / dk - 2.0 * (kj * kj * ki * fj + ki * ki * kj * fic) / dk2);
            rom.M(j, i) = std::conj(rom.M(i, j));
            rom.S(j, i) = std::conj(rom.S(i, j));
        }
    }

    // Diagonals are the coincident-wavenumber limits and need the data
    // derivatives. The S_ii limit evaluates to k^2 * (the rotational terms
    // minus Im f') minus k * Im f; both diagonals are real.
    for (int i = 0; i < m; ++i) {
        const double k = sp.k[i];
        const Complex f = sp.f[i], g = sp.g[i], fp = sp.fprime[i], gp = sp.gprime[i];
        const double rot = f.real() * fp.imag() - f.imag() * fp.real() +
                           g.real() * gp.imag() - g.imag() * gp.real();
        rom.M(i, i) = Complex(rot - fp.imag() + f.imag() / k, 0.0);
        rom.S(i, i) = Complex(k * k * (rot - fp.imag()) - k * f.imag(), 0.0);
    }
    return rom;
}

RomSystem assemble_direct(const std::vector<StateField>& states, const PotentialModel& q,
                          const SpatialGrid& grid) {
    const int m = static_cast<int>(states.size());
    if (m < 1) throw validation_error("assemble_direct: no states");
    const int nn = grid.node_count();
    for (const auto& s : states)
        if (s.values.size() != nn)
            throw validation_error("assemble_direct: state/grid size mismatch");

    Eigen::MatrixXcd U(nn, m);
    for (int j = 0; j < m; ++j) U.col(j) = states[static_cast<std::size_t>(j)].values;

    Eigen::VectorXd w = Eigen::VectorXd::Constant(nn, grid.h);
    w[0] = 0.5 * grid.h;
    w[nn - 1] = 0.5 * grid.h;
    const Eigen::VectorXd qv = q.evaluate(grid);

    // Mass and potential Grams by trapezoid; derivative Gram by cell-midpoint
    // differences, the quadrature under which the solver's weak form holds
    // exactly.
    Eigen::MatrixXcd M = U.adjoint() * (w.asDiagonal() * U);
    Eigen::MatrixXcd D = U.bottomRows(nn - 1) - U.topRows(nn - 1);
    Eigen::MatrixXcd S = (D.adjoint() * D) / grid.h +
                         U.adjoint() * ((w.array() * qv.array()).matrix().asDiagonal() * U);

    auto symmetrize = [](Eigen::MatrixXcd& A, const char* name) {
        const double asym = (A - A.adjoint()).norm();
        if (asym > 1e-12 * A.norm())
            throw numerical_error(std::string("assemble_direct: ") + name +
                                  " quadrature asymmetry above 1e-12");
        A = 0.5 * (A + A.adjoint()).eval();
    };
    symmetrize(M, "M");
    symmetrize(S, "S");

    RomSystem rom;
    rom.k.resize(m);
    rom.f.resize(m);
    rom.g.resize(m);
    for (int j = 0; j < m; ++j) {
        rom.k[j] = states[static_cast<std::size_t>(j)].k;
        std::tie(rom.f[j], rom.g[j]) = boundary_trace(states[static_cast<std::size_t>(j)]);
    }
    rom.S = std::move(S);
    rom.M = std::move(M);
    rom.B = rom.f.conjugate() * rom.f.transpose() + rom.g.conjugate() * rom.g.transpose();
    return rom;
}

RomCoefficients rom_solve(const RomSystem& rom, double k) {
    if (!(k > 0.0)) throw validation_error("rom_solve: wavenumber must be positive");
    const Eigen::MatrixXcd A = rom.system_at(k);
    const Eigen::VectorXcd b = rom.bvec(k);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);

    RomCoefficients out;
    out.k = k;
    out.c = lu.solve(b);
    const double bnorm = b.norm();
    double res = (b - A * out.c).norm();
    if (res > 1e-10 * bnorm) {
        out.c += lu.solve(b - A * out.c);  // one refinement pass
        res = (b - A * out.c).norm();
    }
    if (res > 1e-10 * bnorm)
        throw numerical_error("rom_solve: near-singular projected system at k=" +
                              std::to_string(k) + " (rcond=" + std::to_string(lu.rcond()) + ")");
    return out;
}

std::pair<Complex, Complex> interpolate_data(const RomSystem& rom, double k) {
    const RomCoefficients c = rom_solve(rom, k);
    const Complex fk = (c.c.array() * rom.f.array()).sum();
    const Complex gk = (c.c.array() * rom.g.array()).sum();
    return {fk, gk};
}

void export_rom_csv(const RomSystem& rom, const std::filesystem::path& path) {
    const int m = rom.size();
    CsvWriter out(path, {"field", "i", "j", "re", "im"});
    auto emit = [&](const std::string& field, int i, int j, Complex v) {
        out.row_raw({field, std::to_string(i), std::to_string(j), csv_format(v.real()),
                     csv_format(v.imag())});
    };
    for (int i = 0; i < m; ++i) emit("k", i, 0, Complex(rom.k[i], 0.0));
    for (int i = 0; i < m; ++i) emit("f", i, 0, rom.f[i]);
    for (int i = 0; i < m; ++i) emit("g", i, 0, rom.g[i]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) emit("S", i, j, rom.S(i, j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) emit("M", i, j, rom.M(i, j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) emit("B", i, j, rom.B(i, j));
    out.close();
}

RomSystem import_rom_csv(const std::filesystem::path& path) {
    const CsvTable t = CsvTable::read(path);
    int m = 0;
    for (const auto& r : t.rows)
        if (r.at(0) == "k") ++m;
    if (m == 0) throw io_error("rom import: no wavenumber rows in " + path.string());

    RomSystem rom;
    rom.k.resize(m);
    rom.f.resize(m);
    rom.g.resize(m);
    rom.S.setZero(m, m);
    rom.M.setZero(m, m);
    rom.B.setZero(m, m);
    for (const auto& r : t.rows) {
        if (r.size() != 5) throw io_error("rom import: malformed row in " + path.string());
        const std::string& field = r[0];
        const int i = std::stoi(r[1]);
        const int j = std::stoi(r[2]);
        const Complex v(std::stod(r[3]), std::stod(r[4]));
        if (i < 0 || i >= m || j < 0 || j >= m)
            throw io_error("rom import: index out of range in " + path.string());
        if (field == "k")
            rom.k[i] = v.real();
        else if (field == "f")
            rom.f[i] = v;
        else if (field == "g")
            rom.g[i] = v;
        else if (field == "S")
            rom.S(i, j) = v;
        else if (field == "M")
            rom.M(i, j) = v;
        else if (field == "B")
            rom.B(i, j) = v;
        else
            throw io_error("rom import: unknown field '" + field + "'");
    }
    return rom;
}

}  // namespace romscat
