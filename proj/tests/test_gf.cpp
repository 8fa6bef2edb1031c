#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "listrec/gf.hpp"

using namespace listrec;

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(37));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(35));
    CHECK_FALSE(is_prime(1ull << 32));
}

TEST_CASE("distinct prime factors") {
    CHECK(distinct_prime_factors(2) == std::vector<std::uint64_t>{2});
    CHECK(distinct_prime_factors(36) == std::vector<std::uint64_t>{2, 3});
    CHECK(distinct_prime_factors(97) == std::vector<std::uint64_t>{97});
    CHECK(distinct_prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("residue arithmetic round trips") {
    const std::uint32_t q = 37;
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            CHECK(addm(subm(a, b, q), b, q) == a);
            if (b != 0) CHECK(mulm(mulm(a, b, q), invm(b, q), q) == a);
        }
        CHECK(powm(a, q, q) == a);  // Fermat
    }
    CHECK_THROWS_AS(invm(0, 37), std::domain_error);
}

TEST_CASE("field element axioms") {
    const std::uint32_t q = 13;
    for (std::uint32_t a = 0; a < q; ++a) {
        const Fp x(a, q);
        CHECK(x + (-x) == Fp(0, q));
        CHECK(x * Fp(1, q) == x);
        if (a != 0) {
            CHECK(x * x.inv() == Fp(1, q));
            CHECK(x.pow(q - 1) == Fp(1, q));
        }
    }
    CHECK_THROWS_AS(Fp(1, 13) + Fp(1, 7), std::invalid_argument);
    CHECK_THROWS_AS(Fp(0, 13).inv(), std::domain_error);
}

TEST_CASE("smallest primitive roots of small primes") {
    CHECK(primitive_root(3) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(13) == 2);
    CHECK(primitive_root(17) == 3);
    CHECK(primitive_root(37) == 2);
    CHECK(primitive_root(41) == 6);
    CHECK_THROWS_AS(primitive_root(15), std::invalid_argument);
}

TEST_CASE("primitive root order equals q-1 for primes up to 200") {
    for (std::uint32_t q = 3; q <= 200; ++q) {
        if (!is_prime(q)) continue;
        const std::uint32_t g = primitive_root(q);
        CHECK(multiplicative_order(g, q) == q - 1);
        // Smallest: everything below g generates a proper subgroup.
        for (std::uint32_t a = 2; a < g; ++a)
            CHECK(multiplicative_order(a, q) < q - 1);
    }
}

TEST_CASE("rational normalization") {
    CHECK(ratio(2, 4) == ratio(1, 2));
    CHECK(ratio(-2, -4) == ratio(1, 2));
    CHECK(ratio(2, -4) == ratio(-1, 2));
    CHECK(ratio(0, 5) == Rational(0));
    CHECK(ratio(-1, 2).is_negative());
    CHECK(ratio(4, 2).is_integer());
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
    const Rational a = ratio(1, 3);
    const Rational b = ratio(1, 6);
    CHECK(a + b == ratio(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == ratio(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == ratio(-1, 3));
    CHECK(a.pow(3) == ratio(1, 27));
    CHECK(a.pow(0) == Rational(1));
    CHECK(a < ratio(1, 2));
    CHECK(ratio(7, 8) > ratio(6, 7));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);

    // (1/3 + 1/6) * 6 stays exact where doubles would drift.
    Rational sum(0);
    for (int i = 0; i < 600; ++i) sum += ratio(1, 600);
    CHECK(sum == Rational(1));
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("3/4") == ratio(3, 4));
    CHECK(Rational::parse("-3/4") == ratio(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("6/4") == ratio(3, 2));
    CHECK(ratio(3, 4).to_string() == "3/4");
    CHECK(Rational(5).to_string() == "5");
    CHECK(ratio(-1, 2).to_string() == "-1/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
}

TEST_CASE("rational floor and ceiling") {
    CHECK(rational_floor(ratio(7, 2)) == 3);
    CHECK(rational_ceil(ratio(7, 2)) == 4);
    CHECK(rational_floor(ratio(-7, 2)) == -4);
    CHECK(rational_ceil(ratio(-7, 2)) == -3);
    CHECK(rational_floor(Rational(5)) == 5);
    CHECK(rational_ceil(Rational(5)) == 5);
    CHECK(rational_floor(ratio(-1, 3)) == -1);
    CHECK(rational_ceil(ratio(-1, 3)) == 0);
}

TEST_CASE("to_double on representable values") {
    CHECK(ratio(1, 2).to_double() == 0.5);
    CHECK(ratio(-3, 4).to_double() == -0.75);
    CHECK(Rational(1).to_double() == 1.0);
}
