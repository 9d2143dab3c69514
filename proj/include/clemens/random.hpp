#pragma once

#include <cstdint>
#include <random>

#include "clemens/rational.hpp"

namespace clemens {

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for a (parent, a, b) triple; stable across platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Seeded generator with platform-independent bounded draws (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform integer in [lo, hi].
    long uniform_int(long lo, long hi);
    /// Uniform double in [0, 1).
    double uniform01();
    /// num/den with num in [-height, height], den in [1, height].
    Rational rational(long height);
    Rational nonzero_rational(long height);

private:
    std::mt19937_64 eng_;
};

}  // namespace clemens
