#ifndef ROMSCAT_ESTIMATE_HPP
#define ROMSCAT_ESTIMATE_HPP

#include <vector>

#include <Eigen/Core>

#include "romscat/forward.hpp"
#include "romscat/lanczos.hpp"
#include "romscat/rom.hpp"

namespace romscat {

enum class Method { LO, DA, BORN, TRUE };

const char* method_name(Method m);
Method method_from_string(const std::string& s);

struct StateEstimate {
    double k = 0.0;
    Eigen::VectorXcd values;
    Method tag = Method::DA;
    Eigen::VectorXcd coefficients;  // length m (DA/BORN/TRUE) or r (LO)
};

// Lanczos-orthogonalization estimate. Coefficients come from the data-side
// reduced system (T - k^2 I - ik Q*BQ) c = Q*b; the state is synthesized in
// the reference basis v0_j = sum_i Q0_ij u0_i built with the same epsilon and
// start rule. Both factorizations start from the (M+eI)-normalized vector
// conj(f), the k-independent direction of b(k).
StateEstimate lo_estimate(const RomSystem& data_rom, const RomSystem& ref_rom,
                          const std::vector<StateField>& ref_states, double epsilon, double k);

// Data-assimilation estimate: least squares over the stacked system
//   [ S - k^2 M - ik B ]       [ b(k)   ]
//   [ rho f0^T         ] c  =  [ rho fk ]
//   [ rho g0^T         ]       [ rho gk ]
// with the state synthesized as sum_i c_i u0_i.
StateEstimate da_estimate(const RomSystem& data_rom, const BoundarySpectrum& ref_spectrum,
                          const std::vector<StateField>& ref_states, double rho, double k,
                          Complex fk, Complex gk);

/// Reference state as-is (Born benchmark when q0 = 0).
StateEstimate born_estimate(const std::vector<StateField>& ref_states, int k_index);

/// True state as-is (ideal benchmark).
StateEstimate true_estimate(const std::vector<StateField>& true_states, int k_index);

}  // namespace romscat

#endif
