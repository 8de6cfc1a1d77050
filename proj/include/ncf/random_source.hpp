#pragma once

#include <cstdint>
#include <random>

namespace ncf {

// Deterministic random stream: identical seed => identical stream, on every
// platform (mt19937_64 is fully specified by the standard, and uniform
// deviates are derived from raw words rather than distribution objects).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next_u64() {
        ++counter_;
        return engine_();
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1).
    double uniform_open01() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return u;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace ncf
