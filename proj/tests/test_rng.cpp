#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "listrec/rng.hpp"

using namespace listrec;

TEST_CASE("identical seeds give identical sequences") {
    Rng a(123456789);
    Rng b(123456789);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("streams with different indices diverge") {
    Rng a = Rng::stream(7, 0);
    Rng b = Rng::stream(7, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next() == b.next();
    CHECK(equal < 4);
}

TEST_CASE("stream is a pure function of seed and index") {
    CHECK(Rng::stream(42, 9).next() == Rng::stream(42, 9).next());
    CHECK(Rng::stream(42, 9).next() != Rng::stream(43, 9).next());
}

TEST_CASE("below stays in range and covers small ranges") {
    Rng rng(99);
    std::array<int, 5> seen{};
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t v = rng.below(5);
        REQUIRE(v < 5);
        ++seen[v];
    }
    for (int count : seen) CHECK(count > 800);  // within 20% of uniform
    CHECK(rng.below(1) == 0);
}

TEST_CASE("weighted picks follow the weight ratios") {
    Rng rng(2024);
    const std::vector<std::uint64_t> weights = {1, 3, 0, 4};
    std::array<std::uint64_t, 4> seen{};
    const int trials = 80000;
    for (int i = 0; i < trials; ++i) ++seen[rng.pick_weighted(weights)];
    CHECK(seen[2] == 0);
    // Expected fractions 1/8, 3/8, 0, 4/8; allow 3 sigma.
    CHECK(std::abs(static_cast<double>(seen[0]) / trials - 0.125) < 0.006);
    CHECK(std::abs(static_cast<double>(seen[1]) / trials - 0.375) < 0.006);
    CHECK(std::abs(static_cast<double>(seen[3]) / trials - 0.500) < 0.006);
}

TEST_CASE("weighted pick rejects a zero total") {
    Rng rng(1);
    const std::vector<std::uint64_t> weights = {0, 0};
    CHECK_THROWS(rng.pick_weighted(weights));
}
