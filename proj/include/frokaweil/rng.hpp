#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace frokaweil {

using Complex = std::complex<double>;

/// Deterministic random source. All randomized construction in the library
/// goes through this class so that a seed pins the output exactly; the
/// Gaussian transform is done by hand because std::normal_distribution is
/// implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform on (0, 1], 53-bit resolution
    double uniform01() {
        const std::uint64_t bits = gen_() >> 11;
        double u = static_cast<double>(bits) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    // standard normal via Box-Muller; second value cached
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        cached_ = rad * std::sin(ang);
        have_cached_ = true;
        return rad * std::cos(ang);
    }

    Complex cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  private:
    std::mt19937_64 gen_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace frokaweil
