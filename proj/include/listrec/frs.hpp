#pragma once

#include <cstdint>
#include <vector>

#include "listrec/gf.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// Folded Reed-Solomon code over F_q: messages are coefficient vectors of
/// polynomials of degree < k, codeword coordinate i is the column
/// (f(a_i), f(a_i*g), ..., f(a_i*g^{s-1})) for a_i = g^{s*(i-1)} and g the
/// smallest primitive root. Codewords are handled flattened, as Vec of length
/// n*s in (F_q^s)^n, so they plug directly into the subspace machinery.
class FrsCode {
  public:
    /// Requires q prime with q > s*n and 1 <= k <= s*n. The evaluation points
    /// then automatically satisfy a_i * g^t != a_j for i != j, t < s; the
    /// constructor re-checks this directly.
    FrsCode(std::uint32_t q, std::uint32_t n, std::uint32_t k, std::uint32_t s);

    std::uint32_t q() const { return shape_.q; }
    std::uint32_t n() const { return shape_.n; }
    std::uint32_t k() const { return k_; }
    std::uint32_t s() const { return shape_.s; }
    std::uint32_t gamma() const { return gamma_; }
    const std::vector<std::uint32_t>& alphas() const { return alphas_; }

    Shape shape() const { return shape_; }
    Rational rate() const;  // k/(s*n)

    /// Subspace-design trade-off: s*R/(s-r+1) for 1 <= r <= s, and 1 beyond.
    Rational tau(std::uint32_t r) const;

    /// Minimum relative distance, (n - floor((k-1)/s))/n exactly: a nonzero
    /// message polynomial has degree < k, so at most floor((k-1)/s) whole
    /// coordinates can vanish, and a product of point factors attains that.
    Rational relative_distance() const;

    /// Horner evaluation of the message polynomial at every point a_i * g^j.
    Vec encode(const Vec& message) const;

    /// The whole code as a k-dimensional subspace (span of unit-message encodings).
    Subspace code_space() const;

    /// Enumerate all q^k codewords; throws std::length_error beyond limit.
    void for_each_codeword(std::uint64_t limit, const std::function<void(const Vec&)>& fn) const;

  private:
    Shape shape_;
    std::uint32_t k_;
    std::uint32_t gamma_;
    std::vector<std::uint32_t> alphas_;
};

/// Coordinates where a and b carry the same full s-column.
std::vector<std::uint32_t> agreement_coordinates(const Shape& shape, const Vec& a, const Vec& b);

/// Fraction of coordinates where a and b differ.
Rational hamming_distance(const Shape& shape, const Vec& a, const Vec& b);

}  // namespace listrec
