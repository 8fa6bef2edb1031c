#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "listrec/frs.hpp"
#include "listrec/prune.hpp"

using namespace listrec;

namespace {

const Shape kShape{3, 2, 7};
const Vec kGen = {1, 0, 0, 0, 2, 3};  // zero on block 1

/// Lists of size up to 2 containing the symbols of `around` everywhere, with a
/// fixed junk symbol added where it differs.
ListRecoveryInstance agree_lists(const Shape& shape, const Vec& around) {
    std::vector<std::vector<Symbol>> lists(shape.n);
    for (std::uint32_t i = 0; i < shape.n; ++i) {
        lists[i].push_back(symbol_at(around, shape, i));
        const Symbol junk{3, 5};
        if (junk != lists[i][0]) lists[i].push_back(junk);
    }
    return ListRecoveryInstance(shape, std::move(lists), 2, Rational(0));
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(PruneParams(Rational(0), ratio(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(PruneParams(ratio(-1, 2), ratio(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(PruneParams(ratio(1, 2), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(PruneParams(ratio(1, 2), ratio(-1, 4)), std::invalid_argument);
    CHECK_NOTHROW(PruneParams(ratio(1, 2), Rational(0)));
}

TEST_CASE("weight and profile of a hand-checked line") {
    const Subspace h = Subspace::span(kShape, {kGen});
    const PruneParams params(ratio(1, 2), ratio(1, 4));
    CHECK(weight(h, params.eta) == ratio(3, 2));

    // Restrictions have dims 0, 1 (all of h), 0; threshold (3/4)*(3/2) = 9/8.
    // Block 1 is excluded because the restriction there is h itself.
    const WeightProfile profile = weight_profile(h, params);
    CHECK(profile.qualifying == std::vector<std::uint32_t>{0, 2});
    CHECK(profile.weights == std::vector<Rational>{ratio(1, 2), ratio(1, 2)});
    CHECK(profile.total == Rational(1));
    REQUIRE(profile.restricted.size() == 2);
    CHECK(profile.restricted[0].dim() == 0);
    CHECK(profile.restricted[1].dim() == 0);
}

TEST_CASE("pruning a line pins one dimension-dropping coordinate") {
    const Subspace h = Subspace::span(kShape, {kGen});
    const PruneParams params(ratio(1, 2), ratio(1, 4));
    int pinned_first = 0;
    const int runs = 400;
    for (int j = 0; j < runs; ++j) {
        Rng rng = Rng::stream(11, static_cast<std::uint64_t>(j));
        const PruneTrace trace = fprune(h, params, rng);
        REQUIRE_FALSE(trace.failed);
        REQUIRE(trace.pinned.size() == 1);
        REQUIRE(trace.dims == std::vector<std::uint32_t>{0});
        CHECK((trace.pinned[0] == 0 || trace.pinned[0] == 2));
        pinned_first += trace.pinned[0] == 0;
    }
    // Both qualifying coordinates carry weight 1/2.
    CHECK(pinned_first > 140);
    CHECK(pinned_first < 260);
}

TEST_CASE("run fails when no coordinate qualifies") {
    const Subspace h = Subspace::span(kShape, {kGen});
    // Threshold (1 - 3/4)*(3/2) = 3/8 sits below the dim-0 weight 1/2.
    const PruneParams params(ratio(1, 2), ratio(3, 4));
    Rng rng(3);
    const PruneTrace trace = fprune(h, params, rng);
    CHECK(trace.failed);
    CHECK(trace.pinned.empty());
    CHECK(trace.dims.empty());
}

TEST_CASE("trace invariants on a larger space") {
    const FrsCode code(17, 7, 3, 2);
    const Subspace h =
        Subspace::span(code.shape(), {code.encode({1, 3, 5}), code.encode({2, 0, 7})});
    REQUIRE(h.dim() == 2);
    const PruneParams params(ratio(1, 8), ratio(1, 8));
    for (int j = 0; j < 200; ++j) {
        Rng rng = Rng::stream(17, static_cast<std::uint64_t>(j));
        const PruneTrace trace = fprune(h, params, rng);
        REQUIRE_FALSE(trace.failed);
        CHECK(trace.pinned.size() == trace.dims.size());
        CHECK(trace.dims.back() == 0);
        for (std::size_t i = 0; i + 1 < trace.dims.size(); ++i)
            CHECK(trace.dims[i] > trace.dims[i + 1]);
        CHECK(trace.pinned.size() <= trace_length_bound(2, params.eta_prime));
        std::vector<std::uint32_t> sorted = trace.pinned;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::unique(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("pin count bound values and monotonicity") {
    CHECK(trace_length_bound(3, ratio(1, 8)) == 3);
    CHECK(trace_length_bound(32, ratio(1, 3)) == 11);
    CHECK(trace_length_bound(5, Rational(0)) == 5);
    CHECK(trace_length_bound(4, ratio(1, 4)) == 4);
    CHECK(trace_length_bound(1, ratio(1, 2)) == 1);
    for (const Rational& ep : {ratio(1, 8), ratio(1, 3)})
        for (std::uint32_t r = 1; r < 64; ++r)
            CHECK(trace_length_bound(r, ep) <= trace_length_bound(r + 1, ep));
}

TEST_CASE("potential of hand-checked configurations") {
    const Subspace h = Subspace::span(kShape, {kGen});
    const PruneParams params(ratio(1, 2), ratio(1, 4));
    const ListRecoveryInstance lists = agree_lists(kShape, kGen);

    CHECK(potential(h, kGen, {}, lists, params) == ratio(2, 3));  // 1 / (3/2)

    const Subspace h0 = h.coordinate_zero(0);
    CHECK(potential(h0, kGen, {0}, lists, params) == ratio(3, 2));  // (3/4) / (1/2)

    // c leaving the list on T zeroes the potential.
    ListRecoveryInstance off = agree_lists(kShape, Vec{6, 6, 0, 0, 2, 3});
    CHECK(potential(h0, kGen, {0}, off, params) == Rational(0));

    // h must vanish on T.
    CHECK_THROWS_AS(potential(h, kGen, {0}, lists, params), std::invalid_argument);
}

TEST_CASE("expected potential step is exact on the worked line") {
    const Subspace h = Subspace::span(kShape, {kGen});
    const PruneParams params(ratio(1, 2), ratio(1, 4));

    // Both pins land on a dim-0 space: E = 1/2*(3/2) + 1/2*(3/2) = 3/2.
    const ListRecoveryInstance lists = agree_lists(kShape, kGen);
    CHECK(expected_potential_step(h, kGen, {}, lists, params) == ratio(3, 2));
    CHECK(expected_potential_step(h, kGen, {}, lists, params) >=
          potential(h, kGen, {}, lists, params));

    // c outside the list at coordinate 0 loses that branch: E = 1/2*(3/2).
    const ListRecoveryInstance off = agree_lists(kShape, Vec{6, 6, 0, 0, 2, 3});
    CHECK(expected_potential_step(h, kGen, {}, off, params) == ratio(3, 4));
}

TEST_CASE("one-step monotonicity holds on a folded code span with nonempty T") {
    const FrsCode code(17, 7, 3, 2);
    const Shape shape = code.shape();
    const PruneParams params(ratio(1, 8), ratio(1, 8));
    const Subspace h =
        Subspace::span(shape, {code.encode({1, 3, 5}), code.encode({2, 0, 7})});
    const Vec c = code.encode({1, 3, 5});
    const ListRecoveryInstance lists = agree_lists(shape, c);

    CHECK(expected_potential_step(h, c, {}, lists, params) >=
          potential(h, c, {}, lists, params));

    // One pin deep: restrict to a coordinate where c itself vanishes is not
    // available here, so follow a qualifying restriction and re-center the
    // lists on a vector of the smaller space.
    const WeightProfile profile = weight_profile(h, params);
    REQUIRE_FALSE(profile.qualifying.empty());
    for (std::size_t idx = 0; idx < profile.qualifying.size(); ++idx) {
        const Subspace& cut = profile.restricted[idx];
        if (cut.dim() == 0) continue;
        const std::uint32_t t = profile.qualifying[idx];
        const Vec c2 = cut.basis().front();
        const ListRecoveryInstance lists2 = agree_lists(shape, c2);
        CHECK(expected_potential_step(cut, c2, {t}, lists2, params) >=
              potential(cut, c2, {t}, lists2, params));
    }
}

TEST_CASE("received-word pruners return the planted vector at zero noise") {
    const FrsCode code(13, 3, 2, 2);
    const Shape shape = code.shape();
    const Vec c = code.encode({4, 9});
    const Subspace dir = Subspace::span(shape, {code.encode({0, 1}), code.encode({1, 0})});
    const AffineSpace space(Vec(shape.flat_len(), 0), dir);
    REQUIRE(space.member(c));

    for (int j = 0; j < 50; ++j) {
        Rng u = Rng::stream(23, static_cast<std::uint64_t>(j));
        Rng a = Rng::stream(29, static_cast<std::uint64_t>(j));
        const auto got_u = prune_uniform(space, c, u);
        const auto got_a = prune_ahs(space, c, ratio(1, 4), a);
        REQUIRE(got_u.has_value());
        REQUIRE(got_a.has_value());
        CHECK(*got_u == c);
        CHECK(*got_a == c);
    }
}

TEST_CASE("received-word pruners fail on an unreachable word") {
    const Shape shape{3, 2, 7};
    const Subspace dir = Subspace::span(shape, {Vec{1, 1, 1, 1, 1, 1}});
    const AffineSpace space(Vec(shape.flat_len(), 0), dir);
    const Vec y = {1, 2, 1, 2, 1, 2};  // block (1,2) never occurs in the space
    Rng u(5);
    Rng a(7);
    CHECK(prune_uniform(space, y, u) == std::nullopt);
    CHECK(prune_ahs(space, y, ratio(1, 4), a) == std::nullopt);
}
