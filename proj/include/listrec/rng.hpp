#pragma once

#include <cstdint>
#include <span>

namespace listrec {

/// Deterministic 64-bit generator (splitmix64). Every randomized routine in the
/// library takes one of these explicitly; identical seeds give identical runs on
/// any platform. Independent streams for parallel trials are derived by hashing
/// (seed, stream) rather than by offsetting the state, so streams never overlap.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    /// Stream `index` of the generator family keyed by `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();

    /// Uniform value in [0, bound) by rejection sampling; bound >= 1. Unbiased.
    std::uint64_t below(std::uint64_t bound);

    /// Index i with probability weights[i] / sum(weights). Weights are exact
    /// integers; the sum must be positive and must not overflow uint64.
    std::size_t pick_weighted(std::span<const std::uint64_t> weights);

  private:
    Rng() : state_(0) {}
    std::uint64_t state_;
};

}  // namespace listrec
