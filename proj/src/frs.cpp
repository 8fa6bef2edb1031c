#include "listrec/frs.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace listrec {

FrsCode::FrsCode(std::uint32_t q, std::uint32_t n, std::uint32_t k, std::uint32_t s)
    : shape_{n, s, q}, k_(k) {
    if (n == 0 || s == 0) throw std::invalid_argument("FrsCode: n and s must be positive");
    if (q >= (1u << 31) || !is_prime(q)) throw std::invalid_argument("FrsCode: q must be a prime below 2^31");
    std::uint64_t sn = static_cast<std::uint64_t>(s) * n;
    if (q <= sn) throw std::invalid_argument("FrsCode: q must exceed s*n");
    if (k < 1 || k > sn) throw std::invalid_argument("FrsCode: k must satisfy 1 <= k <= s*n");

    gamma_ = primitive_root(q);
    alphas_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        alphas_[i] = powm(gamma_, static_cast<std::uint64_t>(s) * i, q);
    }

    // a_i * g^t != a_j for i != j, t < s. Guaranteed by s*n <= q-1 and gamma's
    // full order; checked directly anyway.
    std::unordered_set<std::uint32_t> alpha_set(alphas_.begin(), alphas_.end());
    if (alpha_set.size() != n) throw std::logic_error("FrsCode: evaluation points collide");
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t x = alphas_[i];
        for (std::uint32_t t = 1; t < s; ++t) {
            x = mulm(x, gamma_, q);
            if (alpha_set.count(x)) throw std::logic_error("FrsCode: evaluation points collide");
        }
    }
}

Rational FrsCode::rate() const {
    return Rational(BigInt(k_), BigInt(static_cast<std::uint64_t>(shape_.s) * shape_.n));
}

Rational FrsCode::tau(std::uint32_t r) const {
    if (r < 1) throw std::invalid_argument("tau: r must be >= 1");
    if (r > shape_.s) return Rational(1);
    // s*R/(s-r+1) = k/(n*(s-r+1))
    return Rational(BigInt(k_), BigInt(static_cast<std::uint64_t>(shape_.n) * (shape_.s - r + 1)));
}

Rational FrsCode::relative_distance() const {
    const std::uint32_t max_zero_coords = (k_ - 1) / shape_.s;
    return Rational(BigInt(shape_.n - max_zero_coords), BigInt(shape_.n));
}

Vec FrsCode::encode(const Vec& message) const {
    if (message.size() != k_) throw std::invalid_argument("encode: message length must be k");
    for (std::uint32_t c : message) {
        if (c >= shape_.q) throw std::invalid_argument("encode: coefficient out of range");
    }
    Vec out(shape_.flat_len());
    for (std::uint32_t i = 0; i < shape_.n; ++i) {
        std::uint32_t x = alphas_[i];
        for (std::uint32_t j = 0; j < shape_.s; ++j) {
            std::uint32_t acc = 0;
            for (std::uint32_t d = k_; d-- > 0;) {
                acc = addm(mulm(acc, x, shape_.q), message[d], shape_.q);
            }
            out[i * shape_.s + j] = acc;
            x = mulm(x, gamma_, shape_.q);
        }
    }
    return out;
}

Subspace FrsCode::code_space() const {
    std::vector<Vec> rows;
    rows.reserve(k_);
    Vec unit(k_, 0);
    for (std::uint32_t d = 0; d < k_; ++d) {
        unit[d] = 1;
        rows.push_back(encode(unit));
        unit[d] = 0;
    }
    return Subspace::span(shape_, rows);
}

void FrsCode::for_each_codeword(std::uint64_t limit,
                                const std::function<void(const Vec&)>& fn) const {
    code_space().for_each_element(limit, fn);
}

std::vector<std::uint32_t> agreement_coordinates(const Shape& shape, const Vec& a, const Vec& b) {
    if (a.size() != shape.flat_len() || b.size() != shape.flat_len()) {
        throw std::invalid_argument("agreement_coordinates: shape mismatch");
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < shape.n; ++i) {
        bool equal = std::equal(a.begin() + static_cast<std::ptrdiff_t>(i) * shape.s,
                                a.begin() + static_cast<std::ptrdiff_t>(i + 1) * shape.s,
                                b.begin() + static_cast<std::ptrdiff_t>(i) * shape.s);
        if (equal) out.push_back(i);
    }
    return out;
}

Rational hamming_distance(const Shape& shape, const Vec& a, const Vec& b) {
    std::uint32_t agree = static_cast<std::uint32_t>(agreement_coordinates(shape, a, b).size());
    return Rational(BigInt(shape.n - agree), BigInt(shape.n));
}

}  // namespace listrec
