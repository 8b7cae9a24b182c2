#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qsc/errors.hpp"

namespace qsc {

// Deterministic random source: mt19937_64 streams keyed by a 64-bit seed, with
// substreams derived through splitmix64 so independent trials never share state.
// All floating-point draws are built from raw 64-bit words with fixed arithmetic
// (no std::*_distribution), so sequences are identical across platforms.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Independent stream for e.g. trial #index; derivation is splitmix64 over
    // the parent seed xored with the index, so substream(i) != substream(j).
    RandomSource substream(std::uint64_t index) const {
        return RandomSource(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL + index)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound); rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t bound) {
        if (bound == 0) throw InvalidRange("uniform_index: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal via Box-Muller; caches the second value of each pair.
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    // Sum of `trials` Bernoulli(p) draws. Exact distribution, linear time.
    long long binomial(long long trials, double p) {
        long long ones = 0;
        for (long long i = 0; i < trials; ++i) ones += bernoulli(p) ? 1 : 0;
        return ones;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace qsc
