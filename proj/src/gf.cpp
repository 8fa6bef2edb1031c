#include "listrec/gf.hpp"

#include <stdexcept>
#include <utility>

namespace listrec {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("distinct_prime_factors: n must be >= 2");
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint32_t powm(std::uint32_t a, std::uint64_t e, std::uint32_t q) {
    std::uint64_t base = a % q;
    std::uint64_t acc = 1 % q;
    while (e) {
        if (e & 1) acc = acc * base % q;
        base = base * base % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t invm(std::uint32_t a, std::uint32_t q) {
    if (a == 0) throw std::domain_error("invm: zero has no inverse");
    // Extended Euclid on (a, q); q prime guarantees gcd 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q, new_r = a;
    while (new_r != 0) {
        std::int64_t quo = r / new_r;
        t = std::exchange(new_t, t - quo * new_t);
        r = std::exchange(new_r, r - quo * new_r);
    }
    if (r != 1) throw std::domain_error("invm: modulus not prime");
    if (t < 0) t += q;
    return static_cast<std::uint32_t>(t);
}

Fp::Fp(std::uint64_t value, std::uint32_t q) : val_(0), q_(q) {
    if (q < 2 || q >= (1u << 31) || !is_prime(q)) {
        throw std::invalid_argument("Fp: modulus must be a prime below 2^31");
    }
    val_ = static_cast<std::uint32_t>(value % q);
}

namespace {
void require_same_field(const Fp& a, const Fp& b) {
    if (a.modulus() != b.modulus()) {
        throw std::invalid_argument("Fp: mixed moduli");
    }
}
}  // namespace

Fp Fp::operator+(const Fp& o) const {
    require_same_field(*this, o);
    return Fp(addm(val_, o.val_, q_), q_);
}

Fp Fp::operator-(const Fp& o) const {
    require_same_field(*this, o);
    return Fp(subm(val_, o.val_, q_), q_);
}

Fp Fp::operator*(const Fp& o) const {
    require_same_field(*this, o);
    return Fp(mulm(val_, o.val_, q_), q_);
}

Fp Fp::operator/(const Fp& o) const {
    require_same_field(*this, o);
    return *this * o.inv();
}

Fp Fp::operator-() const { return Fp(val_ == 0 ? 0 : q_ - val_, q_); }

Fp Fp::inv() const { return Fp(invm(val_, q_), q_); }

Fp Fp::pow(std::uint64_t e) const { return Fp(powm(val_, e, q_), q_); }

std::uint64_t multiplicative_order(std::uint32_t a, std::uint32_t q) {
    if (a % q == 0) throw std::domain_error("multiplicative_order: zero element");
    std::uint64_t order = q - 1;
    for (std::uint64_t p : distinct_prime_factors(q - 1)) {
        while (order % p == 0 && powm(a, order / p, q) == 1) order /= p;
    }
    return order;
}

std::uint32_t primitive_root(std::uint32_t q) {
    if (q < 3 || !is_prime(q)) {
        throw std::invalid_argument("primitive_root: q must be a prime >= 3");
    }
    auto factors = distinct_prime_factors(q - 1);
    for (std::uint32_t g = 2; g < q; ++g) {
        bool primitive = true;
        for (std::uint64_t p : factors) {
            if (powm(g, (q - 1) / p, q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("primitive_root: none found");  // unreachable for prime q
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::pow(unsigned e) const {
    Rational acc(1);
    Rational base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

double Rational::to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

BigInt rational_floor(const Rational& x) {
    BigInt quo = x.num() / x.den();  // truncates toward zero
    if (x.num() < 0 && quo * x.den() != x.num()) --quo;
    return quo;
}

BigInt rational_ceil(const Rational& x) {
    BigInt quo = x.num() / x.den();
    if (x.num() > 0 && quo * x.den() != x.num()) ++quo;
    return quo;
}

}  // namespace listrec
