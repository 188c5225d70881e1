#ifndef RRAP_RNG_HPP
#define RRAP_RNG_HPP

#include <cstdint>
#include <random>

namespace rrap {

// mt19937_64 with hand-rolled value mappings. The standard distributions
// are implementation-defined, so runs would not reproduce across standard
// libraries; these mappings pin the exact stream to the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform index in [0, n), n >= 1.
    std::size_t index(std::size_t n) {
        // multiply-shift; bias is ~n/2^64, irrelevant at population sizes
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rrap

#endif  // RRAP_RNG_HPP
