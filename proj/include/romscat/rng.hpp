#ifndef ROMSCAT_RNG_HPP
#define ROMSCAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace romscat {

// Standard normal sampler: Box-Muller over mt19937_64. Hand-rolled instead of
// std::normal_distribution because the latter's output sequence is
// implementation-defined, and seeded runs must be bit-reproducible.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace romscat

#endif
