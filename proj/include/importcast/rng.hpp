#pragma once

#include <cstdint>

namespace importcast {

// xorshift64* generator (Marsaglia's xorshift with Vigna's multiplicative
// scrambler, constant 0x2545F4914F6CDD1D). Self-contained so results are
// identical on every platform, unlike the distributions in <random>.
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next_u64() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform in [0,1), from the top 53 bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

}  // namespace importcast
