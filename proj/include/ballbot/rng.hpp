#pragma once

#include <cstdint>

namespace ballbot {

// xorshift64* generator (Vigna's 2014 variant). Chosen over <random>
// engines so traces stay bit-identical across standard libraries. The name
// is recorded in trace headers next to the seed.
class XorShift64Star {
public:
    static constexpr const char* kName = "xorshift64star";

    // xorshift state must be nonzero; seed 0 falls back to a fixed odd
    // constant so every seed value is usable.
    explicit XorShift64Star(std::uint64_t seed)
        : state_(seed != 0 ? seed : kZeroSeedFallback) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform draw in [0, bound) via the high word of a 128-bit product.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    static constexpr std::uint64_t kZeroSeedFallback = 0x9E3779B97F4A7C15ULL;

    std::uint64_t state_;
};

}  // namespace ballbot
