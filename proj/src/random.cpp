#include "clemens/random.hpp"

#include "clemens/error.hpp"

namespace clemens {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x9e3779b97f4a7c15ULL));
}

long Rng::uniform_int(long lo, long hi) {
    if (hi < lo) throw Error("Rng: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(eng_());
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

double Rng::uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

Rational Rng::rational(long height) {
    const long num = uniform_int(-height, height);
    const long den = uniform_int(1, height);
    return Rational(num, den);
}

Rational Rng::nonzero_rational(long height) {
    for (;;) {
        Rational q = rational(height);
        if (!q.is_zero()) return q;
    }
}

}  // namespace clemens
