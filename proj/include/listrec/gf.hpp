#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace listrec {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic primality test by trial division. Intended for moduli below 2^31.
bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in increasing order (n >= 2).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Raw residue arithmetic mod q. Callers guarantee a, b in [0, q) and q prime, q < 2^31.
inline std::uint32_t addm(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    std::uint32_t r = a + b;
    return r >= q ? r - q : r;
}
inline std::uint32_t subm(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return a >= b ? a - b : a + q - b;
}
inline std::uint32_t mulm(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q);
}
std::uint32_t powm(std::uint32_t a, std::uint64_t e, std::uint32_t q);
std::uint32_t invm(std::uint32_t a, std::uint32_t q);  // a != 0

/// Element of the prime field F_q, stored as a residue in [0, q).
/// Arithmetic between elements of different fields throws std::invalid_argument.
class Fp {
  public:
    Fp() : val_(0), q_(0) {}
    Fp(std::uint64_t value, std::uint32_t q);

    std::uint32_t value() const { return val_; }
    std::uint32_t modulus() const { return q_; }

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator/(const Fp& o) const;
    Fp operator-() const;

    Fp inv() const;                      // throws std::domain_error on zero
    Fp pow(std::uint64_t e) const;

    bool operator==(const Fp& o) const = default;

  private:
    std::uint32_t val_;
    std::uint32_t q_;
};

/// Multiplicative order of a in F_q^*, a != 0.
std::uint64_t multiplicative_order(std::uint32_t a, std::uint32_t q);

/// Smallest primitive root of F_q, q an odd prime. Throws if q is not prime or q < 3.
std::uint32_t primitive_root(std::uint32_t q);

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Always normalized: gcd(num, den) = 1 and den > 0. Comparisons and arithmetic
/// are exact; no floating point is involved anywhere except the explicit
/// to_double conversion.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
    Rational(BigInt num, BigInt den);            // throws std::domain_error if den == 0

    static Rational parse(const std::string& text);  // "a/b" or "a"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // throws std::domain_error on zero divisor
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational pow(unsigned e) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    double to_double() const;
    std::string to_string() const;

  private:
    BigInt num_;
    BigInt den_;
};

inline Rational ratio(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

/// Largest integer <= x.
BigInt rational_floor(const Rational& x);
/// Smallest integer >= x.
BigInt rational_ceil(const Rational& x);

}  // namespace listrec
