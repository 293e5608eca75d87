#pragma once

#include <cstdint>

namespace ghz {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because the
// standard does not pin down uniform_real_distribution, and reports must be
// bit-reproducible across platforms. The whole stream is a pure function of the
// seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline constexpr const char* kGeneratorName = "splitmix64";

}  // namespace ghz
