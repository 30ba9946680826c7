#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qim {

// SplitMix64 finalizer. Used for seed derivation so that every
// (seed, index...) tuple maps to a decorrelated child seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc909ULL) ^ a);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(derive_seed(seed, a) ^ splitmix64(b ^ 0xbb67ae8584caa73bULL));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return splitmix64(derive_seed(seed, a, b) ^ splitmix64(c ^ 0x3c6ef372fe94f82bULL));
}

// The helpers below avoid std::uniform_real_distribution and friends, whose
// output streams are implementation-defined. Everything here is a pure
// function of the mt19937_64 bit stream, so results are reproducible across
// standard libraries.

// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t bound = n * ((~std::uint64_t{0}) / n);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= bound);
    return r % n;
}

// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::span<T> values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    shuffle(std::span<int>(p), rng);
    return p;
}

// Standard normal draws via Box-Muller; keeps the spare deviate so a stream
// of draws consumes exactly one uniform pair per two normals.
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64& rng) : rng_(rng) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = 1.0 - uniform01(rng_);
        const double u2 = uniform01(rng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64& rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qim
