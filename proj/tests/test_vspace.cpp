#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "listrec/vspace.hpp"

using namespace listrec;

namespace {
const Shape kShape{3, 2, 7};  // (F_7^2)^3, flat length 6
}

TEST_CASE("symbol extraction") {
    const Vec v = {1, 2, 3, 4, 5, 6};
    CHECK(symbol_at(v, kShape, 0) == Symbol{1, 2});
    CHECK(symbol_at(v, kShape, 1) == Symbol{3, 4});
    CHECK(symbol_at(v, kShape, 2) == Symbol{5, 6});
    CHECK_THROWS_AS(symbol_at(v, kShape, 3), std::out_of_range);
}

TEST_CASE("span produces a canonical RREF basis") {
    const Vec a = {1, 0, 0, 0, 2, 3};
    const Vec b = {0, 1, 0, 0, 1, 1};
    const Subspace h1 = Subspace::span(kShape, {a, b});
    // Same space from scaled and mixed generators.
    const Vec a2 = {2, 0, 0, 0, 4, 6};           // 2a
    const Vec b2 = {1, 1, 0, 0, 3, 4};           // a + b
    const Subspace h2 = Subspace::span(kShape, {b2, a2});
    CHECK(h1 == h2);
    CHECK(h1.dim() == 2);
    CHECK(h1.pivots() == std::vector<std::uint32_t>{0, 1});
    for (std::size_t r = 0; r < h1.basis().size(); ++r) {
        const Vec& row = h1.basis()[r];
        CHECK(row[h1.pivots()[r]] == 1);
        for (std::size_t other = 0; other < h1.basis().size(); ++other)
            if (other != r) CHECK(h1.basis()[other][h1.pivots()[r]] == 0);
    }
}

TEST_CASE("span drops dependent generators and rejects bad input") {
    const Vec a = {1, 0, 0, 0, 2, 3};
    const Vec twice = {2, 0, 0, 0, 4, 6};
    CHECK(Subspace::span(kShape, {a, twice}).dim() == 1);
    CHECK(Subspace::span(kShape, {}).dim() == 0);
    CHECK(Subspace::span(kShape, {Vec(6, 0)}).dim() == 0);
    CHECK_THROWS_AS(Subspace::span(kShape, {Vec(5, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(Subspace::span(kShape, {Vec{9, 0, 0, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("membership and coset reduction") {
    const Subspace h = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}});
    CHECK(h.member(Vec{2, 0, 0, 0, 4, 6}));
    CHECK(h.member(Vec(6, 0)));
    CHECK_FALSE(h.member(Vec{1, 1, 0, 0, 2, 3}));
    CHECK(h.reduce_mod(Vec{2, 0, 0, 0, 4, 6}) == Vec(6, 0));
    const Vec residual = h.reduce_mod(Vec{2, 1, 0, 0, 4, 6});
    CHECK(residual == Vec{0, 1, 0, 0, 0, 0});
}

TEST_CASE("coordinate restriction") {
    const Subspace h = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}});
    CHECK(h.coordinate_zero(0).dim() == 0);  // (a, 0) = 0 forces a = 0
    CHECK(h.coordinate_zero(1) == h);        // block 1 is identically zero
    CHECK(h.coordinate_zero(2).dim() == 0);

    // Block 2 of a*(1,0|0,0|2,3) + b*(0,1|0,0|5,4) is singular in (a, b), so a
    // one-dimensional line survives the cut.
    const Subspace plane = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}, {0, 1, 0, 0, 5, 4}});
    const Subspace cut = plane.coordinate_zero(2);
    CHECK(cut.dim() == 1);
    cut.for_each_element(1000, [&](const Vec& v) {
        CHECK(plane.member(v));
        CHECK(symbol_at(v, kShape, 2) == Symbol{0, 0});
    });
}

TEST_CASE("element enumeration covers the space exactly once") {
    const Subspace plane = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}, {0, 1, 0, 0, 1, 1}});
    CHECK(plane.element_count() == 49);
    std::set<Vec> seen;
    plane.for_each_element(1000, [&](const Vec& v) {
        CHECK(plane.member(v));
        seen.insert(v);
    });
    CHECK(seen.size() == 49);
    CHECK(seen.count(Vec(6, 0)) == 1);
    CHECK_THROWS_AS(plane.for_each_element(48, [](const Vec&) {}), std::length_error);
}

TEST_CASE("design statistic on hand-checked spaces") {
    // One generator vanishing on block 1: restrictions have dims 0, 1, 0.
    const Subspace line = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}});
    CHECK(design_statistic(line) == ratio(1, 3));
    // Generic line with no zero block: statistic 0.
    const Subspace generic = Subspace::span(kShape, {{1, 1, 1, 1, 1, 1}});
    CHECK(design_statistic(generic) == Rational(0));
}

TEST_CASE("affine spaces canonicalize their offset") {
    const Subspace dir = Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}});
    const Vec p = {2, 1, 0, 0, 4, 6};
    const AffineSpace a(p, dir);
    const AffineSpace b(Vec{0, 1, 0, 0, 0, 0}, dir);  // same coset, other representative
    CHECK(a == b);
    CHECK(a.member(p));
    CHECK_FALSE(a.member(Vec(6, 0)));
    CHECK(a.elements(1000).size() == 7);
    for (const Vec& v : a.elements(1000)) CHECK(a.member(v));
}

TEST_CASE("affine symbol restriction") {
    const Subspace dir =
        Subspace::span(kShape, {{1, 0, 0, 0, 2, 3}, {0, 1, 0, 0, 1, 1}});
    const AffineSpace a(Vec{0, 0, 1, 1, 0, 0}, dir);

    // Fixing coordinate 2 to an attainable symbol cuts the dimension.
    const Vec witness = a.elements(1000).front();
    const auto cut = a.restrict_symbol(2, symbol_at(witness, kShape, 2));
    REQUIRE(cut.has_value());
    CHECK(cut->dim() < a.dim());
    cut->for_each_element(1000, [&](const Vec& v) {
        CHECK(a.member(v));
        CHECK(symbol_at(v, kShape, 2) == symbol_at(witness, kShape, 2));
    });

    // Coordinate 1 is pinned to the offset symbol on all of a.
    CHECK(a.restrict_symbol(1, Symbol{2, 2}) == std::nullopt);
    const auto whole = a.restrict_symbol(1, Symbol{1, 1});
    REQUIRE(whole.has_value());
    CHECK(*whole == a);
}

TEST_CASE("rref, left kernel, and solve agree on a worked system") {
    const std::uint32_t q = 7;
    std::vector<Vec> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    std::vector<Vec> copy = rows;
    const auto pivots = rref_in_place(copy, q);
    CHECK(pivots == std::vector<std::uint32_t>{0, 1});
    CHECK(copy.size() == 2);

    // Kernel of the original row set: row1 = 2*row0 gives (2, -1, 0) ~ (1, 3, 0)
    // after normalization over F_7.
    const auto kernel = left_kernel(rows, 3, q);
    REQUIRE(kernel.size() == 1);
    for (std::uint32_t col = 0; col < 3; ++col) {
        std::uint32_t acc = 0;
        for (std::uint32_t j = 0; j < 3; ++j)
            acc = addm(acc, mulm(kernel[0][j], rows[j][col], q), q);
        CHECK(acc == 0);
    }

    const auto sol = solve_left(rows, Vec{1, 3, 4}, q);  // row0 + row2
    REQUIRE(sol.has_value());
    for (std::uint32_t col = 0; col < 3; ++col) {
        std::uint32_t acc = 0;
        for (std::uint32_t j = 0; j < 3; ++j)
            acc = addm(acc, mulm((*sol)[j], rows[j][col], q), q);
        CHECK(acc == Vec{1, 3, 4}[col]);
    }

    CHECK(solve_left(rows, Vec{0, 0, 1}, q) == std::nullopt);
}
