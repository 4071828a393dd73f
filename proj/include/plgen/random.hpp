#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

namespace plgen {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed of sub-stream `index` of family `stream` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Seeded random source. The standard distributions are implementation-defined,
/// so all draws are computed here to keep outputs bit-identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in the closed interval [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

    /// Uniform real in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform01() < p); }

    /// Standard normal via Box-Muller.
    double normal(double mean, double stddev);

    /// Index drawn proportionally to non-negative weights (at least one positive).
    std::size_t weighted(std::span<const double> weights);

    /// `n` lowercase ASCII letters.
    std::string lowercase_string(std::size_t n);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[index(i)]);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace plgen
