#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace pathint {

/// Neumaier-compensated accumulator. Summation order is whatever the caller
/// feeds it, so results are reproducible for a fixed iteration order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Full-precision decimal rendering (17 significant digits), used by every
/// CSV writer so identical configs produce byte-identical files.
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// SplitMix64 bit mixer; the basis of the counter-based generators below.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in the open interval (0,1) from a (key, counter) pair.
/// Stateless, so draws are order-independent and safe to parallelize.
inline double counter_uniform(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t bits = mix64(mix64(key) ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw keyed by (seed, counter) via Box-Muller.
inline double counter_gaussian(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = counter_uniform(seed, 2 * counter);
    const double u2 = counter_uniform(seed, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace pathint
