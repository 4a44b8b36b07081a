#pragma once

#include <cmath>
#include <cstdint>

namespace rowmosaic {

// SplitMix64 finalizer; basis of all seeded randomness in the project.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so values never depend on evaluation order and
// parallel callers see the same sequence as serial ones. Callers must keep
// counter ranges disjoint per stream; gaussian() consumes counters
// 2c and 2c+1.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::uint64_t u64(std::uint64_t counter) const {
        std::uint64_t h = splitmix64(seed ^ 0x8BADF00D5EEDC0DEULL);
        h = splitmix64(h ^ stream);
        return splitmix64(h ^ counter);
    }

    // [0, 1)
    double unit(std::uint64_t counter) const {
        return double(u64(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n) via 128-bit multiply.
    std::uint64_t below(std::uint64_t n, std::uint64_t counter) const {
        return std::uint64_t((static_cast<__uint128_t>(u64(counter)) * n) >> 64);
    }

    double uniform(double lo, double hi, std::uint64_t counter) const {
        return lo + (hi - lo) * unit(counter);
    }

    // Box-Muller.
    double gaussian(std::uint64_t counter) const {
        double u1 = unit(2 * counter);
        double u2 = unit(2 * counter + 1);
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.28318530717958647692 * u2);
    }
};

}  // namespace rowmosaic
