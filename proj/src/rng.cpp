#include "listrec/rng.hpp"

#include <limits>
#include <stdexcept>

namespace listrec {

namespace {
// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    Rng r;
    r.state_ = mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL);
    return r;
}

std::uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    // Rejection below the largest multiple of bound; (-bound) % bound == 2^64 mod bound.
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t v = next();
        if (v >= threshold) return v % bound;
    }
}

std::size_t Rng::pick_weighted(std::span<const std::uint64_t> weights) {
    std::uint64_t total = 0;
    for (std::uint64_t w : weights) {
        if (w > std::numeric_limits<std::uint64_t>::max() - total) {
            throw std::overflow_error("Rng::pick_weighted: weight sum overflows");
        }
        total += w;
    }
    if (total == 0) throw std::invalid_argument("Rng::pick_weighted: total weight is zero");
    std::uint64_t x = below(total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (x < weights[i]) return i;
        x -= weights[i];
    }
    throw std::logic_error("Rng::pick_weighted: unreachable");
}

}  // namespace listrec
