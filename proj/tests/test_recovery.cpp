#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "listrec/recovery.hpp"

using namespace listrec;

namespace {

ListRecoveryInstance lists_around(const FrsCode& code, const std::vector<Vec>& words,
                                  std::uint32_t ell) {
    const Shape shape = code.shape();
    std::vector<std::vector<Symbol>> lists(shape.n);
    for (std::uint32_t i = 0; i < shape.n; ++i) {
        for (const Vec& w : words) {
            const Symbol sym = symbol_at(w, shape, i);
            if (std::find(lists[i].begin(), lists[i].end(), sym) == lists[i].end())
                lists[i].push_back(sym);
        }
        std::uint32_t filler = 1;
        while (lists[i].size() < ell) {
            Symbol sym(shape.s, 0);
            sym[0] = filler++ % shape.q;
            if (std::find(lists[i].begin(), lists[i].end(), sym) == lists[i].end())
                lists[i].push_back(std::move(sym));
        }
    }
    return ListRecoveryInstance(shape, std::move(lists), ell, Rational(0));
}

}  // namespace

TEST_CASE("exact list finds exactly the planted codewords at radius zero") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w1 = code.encode({3, 1});
    const Vec w2 = code.encode({7, 5});
    const ListRecoveryInstance inst = lists_around(code, {w1, w2}, 2);

    const std::vector<Vec> list = exact_list(code, inst);
    CHECK(std::is_sorted(list.begin(), list.end()));
    CHECK(std::binary_search(list.begin(), list.end(), w1));
    CHECK(std::binary_search(list.begin(), list.end(), w2));
    for (const Vec& c : list) CHECK(inst.distance_to_lists(c) <= inst.delta());
    CHECK_THROWS_AS(exact_list(code, inst, 100), std::length_error);
}

TEST_CASE("step-1 space modes") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w1 = code.encode({3, 1});
    const Vec w2 = code.encode({7, 5});
    const ListRecoveryInstance inst = lists_around(code, {w1, w2}, 2);

    const auto whole = step1_affine_space(code, inst, Step1Mode::whole_code);
    REQUIRE(whole.has_value());
    CHECK(whole->dim() == code.k());
    CHECK(whole->member(w1));

    const auto hull = step1_affine_space(code, inst, Step1Mode::oracle_hull);
    REQUIRE(hull.has_value());
    CHECK(hull->member(w1));
    CHECK(hull->member(w2));
    CHECK(hull->dim() <= code.k());
    for (const Vec& c : exact_list(code, inst)) CHECK(hull->member(c));

    // Unsatisfiable instance: a word that is (1,2) on every coordinate would
    // need the message polynomial to be 1 at two points and 2 elsewhere, which
    // no degree-<2 polynomial does. The hull of an empty list does not exist.
    std::vector<std::vector<Symbol>> bad(3, {Symbol{1, 2}});
    const ListRecoveryInstance empty_inst(code.shape(), std::move(bad), 1, Rational(0));
    CHECK(exact_list(code, empty_inst).empty());
    CHECK(step1_affine_space(code, empty_inst, Step1Mode::oracle_hull) == std::nullopt);
    CHECK(step1_affine_space(code, empty_inst, Step1Mode::whole_code).has_value());
}

TEST_CASE("repetition count formula") {
    // r=1, eta=1, ell=1, t'=1: ceil(2 * (0 + ln 2 + 1)) = 4.
    CHECK(derive_repetitions(1, Rational(1), 1, 1.0) == 4);
    CHECK(derive_repetitions(1, Rational(1), 1, 3.0) == 8);  // ceil(2 * 3.693)
    // Monotone in each argument.
    CHECK(derive_repetitions(2, ratio(1, 4), 2, 1.0) > derive_repetitions(1, ratio(1, 4), 2, 1.0));
    CHECK(derive_repetitions(2, ratio(1, 8), 2, 1.0) > derive_repetitions(2, ratio(1, 4), 2, 1.0));
    CHECK_THROWS_AS(derive_repetitions(1, Rational(0), 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_repetitions(1, Rational(1), 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_repetitions(1, Rational(1), 1, 0.0), std::invalid_argument);
}

TEST_CASE("noiseless recovery covers the planted codewords") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w1 = code.encode({3, 1});
    const Vec w2 = code.encode({7, 5});
    const ListRecoveryInstance inst = lists_around(code, {w1, w2}, 2);

    RecoveryConfig cfg;
    cfg.r = 2;
    cfg.eta = ratio(1, 4);
    cfg.eta_prime = ratio(1, 8);
    cfg.t = 40;
    cfg.seed = 7;
    const RecoveryOutput out = recover(code, inst, cfg);

    CHECK(out.config.t == 40);
    CHECK(out.runs.size() == 40);
    REQUIRE(out.space.has_value());
    for (const RunRecord& rec : out.runs) {
        if (rec.trace.failed) {
            CHECK_FALSE(rec.sumset.has_value());
            continue;
        }
        REQUIRE(rec.sumset.has_value());
        CHECK(rec.sumset->u == std::min(2u, trace_length_bound(2, cfg.eta_prime)));
        CHECK(rec.sumset->v == 2);
        CHECK(rec.sumset->summands.size() <= rec.trace.pinned.size());
    }
    CHECK(covers_all(out, {w1, w2}));
    CHECK(covers_all(out, {}));

    // Derived repetition count kicks in when t is left at zero.
    cfg.t = 0;
    cfg.t_prime = 1.0;
    const RecoveryOutput derived = recover(code, inst, cfg);
    CHECK(derived.config.t == derive_repetitions(2, cfg.eta, 2, 1.0));
}

TEST_CASE("exact filter keeps only true list members") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w1 = code.encode({3, 1});
    const ListRecoveryInstance inst = lists_around(code, {w1}, 2);

    RecoveryConfig cfg;
    cfg.r = 2;
    cfg.eta = ratio(1, 4);
    cfg.eta_prime = ratio(1, 8);
    cfg.t = 10;
    cfg.seed = 3;
    cfg.exact_filter = true;
    const RecoveryOutput out = recover(code, inst, cfg);
    const std::vector<Vec> truth = exact_list(code, inst);
    for (const RunRecord& rec : out.runs) {
        if (!rec.sumset) continue;
        REQUIRE(rec.exact_members.has_value());
        for (const Vec& v : *rec.exact_members)
            CHECK(std::binary_search(truth.begin(), truth.end(), v));
    }
}

TEST_CASE("recovery rejects a budget below the step-1 dimension") {
    const FrsCode code(13, 3, 2, 2);
    const ListRecoveryInstance inst = lists_around(code, {code.encode({3, 1})}, 2);
    RecoveryConfig cfg;
    cfg.r = 1;  // whole code has dimension 2
    cfg.t = 5;
    CHECK_THROWS_AS(recover(code, inst, cfg), std::invalid_argument);
}

TEST_CASE("oracle-hull mode on an unsatisfiable instance emits the empty marker") {
    const FrsCode code(13, 3, 2, 2);
    std::vector<std::vector<Symbol>> bad(3, {Symbol{1, 2}});
    const ListRecoveryInstance inst(code.shape(), std::move(bad), 1, Rational(0));
    RecoveryConfig cfg;
    cfg.step1_mode = Step1Mode::oracle_hull;
    cfg.t = 8;
    const RecoveryOutput out = recover(code, inst, cfg);
    CHECK_FALSE(out.space.has_value());
    CHECK(out.runs.empty());
    CHECK_FALSE(covers_all(out, {Vec(6, 0)}));
    CHECK(covers_all(out, {}));
}

TEST_CASE("theorem list collects exactly the codewords inside the radius") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w1 = code.encode({3, 1});
    const ListRecoveryInstance inst = lists_around(code, {w1}, 2);
    const auto space = step1_affine_space(code, inst, Step1Mode::whole_code);
    const PruneParams params(ratio(1, 8), ratio(1, 8));

    // radius = 1 - (tau(2) + 1/8)/(7/8); tau(2) = 2/3, so radius = 2/21.
    const std::vector<Vec> list = theorem_list(code, *space, inst, 2, params);
    CHECK(std::is_sorted(list.begin(), list.end()));
    CHECK(std::binary_search(list.begin(), list.end(), w1));
    for (const Vec& c : list) CHECK(inst.distance_to_lists(c) < ratio(2, 21));

    std::uint64_t inside = 0;
    code.for_each_codeword(100000, [&](const Vec& c) {
        inside += inst.distance_to_lists(c) < ratio(2, 21);
    });
    CHECK(inside == list.size());

    // Nonpositive radius gives an empty guarantee set.
    const PruneParams wide(Rational(1), ratio(1, 8));
    CHECK(theorem_list(code, *space, inst, 2, wide).empty());
}

TEST_CASE("frozen list-size bounds") {
    CHECK(bound_list_size(4, ratio(1, 4), ratio(1, 4), 2) == doctest::Approx(272.0));
    CHECK(bound_list_size(3, ratio(1, 4), ratio(1, 8), 2) == doctest::Approx(104.0));
    CHECK(bound_bcz(2, ratio(1, 4), ratio(1, 4)) == doctest::Approx(16.0));
    CHECK(bound_bcz(1, ratio(1, 4), ratio(1, 4)) == doctest::Approx(4.0));
    CHECK_THROWS_AS(bound_bcz(2, ratio(3, 4), ratio(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(bound_bcz(2, ratio(1, 4), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(bound_list_size(0, ratio(1, 4), ratio(1, 4), 2), std::invalid_argument);
}

TEST_CASE("capacity-style parameter derivation") {
    const FrsTheoremParams p = frs_theorem_params(ratio(1, 8), ratio(1, 4), 2);
    CHECK(p.r == 32);
    CHECK(p.s0 == 192);
    CHECK(p.eta == ratio(1, 16));
    CHECK(p.eta_prime == ratio(1, 3));
    CHECK(p.sumset_dim_bound == 11);
    CHECK(p.sumset_dim_bound == trace_length_bound(p.r, p.eta_prime));
    CHECK(p.t == derive_repetitions(p.r, p.eta, 2, 1.0));
    CHECK_THROWS_AS(frs_theorem_params(ratio(1, 8), Rational(0), 2), std::invalid_argument);
    CHECK_THROWS_AS(frs_theorem_params(Rational(0), ratio(1, 4), 2), std::invalid_argument);
    CHECK_THROWS_AS(frs_theorem_params(ratio(1, 8), ratio(1, 4), 0), std::invalid_argument);
}
