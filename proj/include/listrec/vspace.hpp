#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "listrec/gf.hpp"

namespace listrec {

/// Ambient space (F_q^s)^n, flattened to F_q^{n*s}. Coordinate i (0-based) of a
/// vector occupies flat positions [i*s, (i+1)*s).
struct Shape {
    std::uint32_t n = 0;
    std::uint32_t s = 0;
    std::uint32_t q = 0;

    std::uint32_t flat_len() const { return n * s; }
    bool operator==(const Shape&) const = default;
};

/// Flat vector over F_q; length and residue range are validated by the owning
/// container, not the alias.
using Vec = std::vector<std::uint32_t>;

/// Symbol of one coordinate: a column vector in F_q^s.
using Symbol = std::vector<std::uint32_t>;

Symbol symbol_at(const Vec& v, const Shape& shape, std::uint32_t coord);

/// Linear subspace of (F_q^s)^n in reduced row echelon form. The RREF basis is
/// a canonical representative, so equal subspaces compare equal row by row.
class Subspace {
  public:
    explicit Subspace(Shape shape);  // zero subspace

    /// Row space of the given vectors.
    static Subspace span(Shape shape, const std::vector<Vec>& vectors);

    Shape shape() const { return shape_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(basis_.size()); }

    /// RREF rows; pivot columns strictly increase, pivot entries are 1 and are
    /// the only nonzero entries of their column.
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }

    bool member(const Vec& v) const;

    /// Residual of v after eliminating all pivot positions; zero iff member.
    /// This is the canonical representative of the coset v + H.
    Vec reduce_mod(const Vec& v) const;

    /// {h in H : h_coord = 0}, the restriction to vectors vanishing on one
    /// whole coordinate block.
    Subspace coordinate_zero(std::uint32_t coord) const;

    BigInt element_count() const;  // q^dim

    /// Visit every element, coefficient odometer order (last basis row varies
    /// fastest). Throws std::length_error if q^dim exceeds limit.
    void for_each_element(std::uint64_t limit, const std::function<void(const Vec&)>& fn) const;
    std::vector<Vec> elements(std::uint64_t limit) const;

    bool operator==(const Subspace& o) const = default;

  private:
    Shape shape_;
    std::vector<Vec> basis_;
    std::vector<std::uint32_t> pivots_;
};

/// (Sum over coordinates i of dim {h in H : h_i = 0}) / n, the statistic the
/// subspace-design bound controls.
Rational design_statistic(const Subspace& subspace);

/// Nonempty affine subspace offset + direction. The stored offset is canonical:
/// it is reduced modulo the direction, so equal affine spaces have equal
/// offsets and equal directions.
class AffineSpace {
  public:
    AffineSpace(Vec offset, Subspace direction);

    Shape shape() const { return direction_.shape(); }
    std::uint32_t dim() const { return direction_.dim(); }
    const Vec& offset() const { return offset_; }
    const Subspace& direction() const { return direction_; }

    bool member(const Vec& v) const;

    /// {x in A : x_coord = symbol}; nullopt when no element matches.
    std::optional<AffineSpace> restrict_symbol(std::uint32_t coord, const Symbol& symbol) const;

    void for_each_element(std::uint64_t limit, const std::function<void(const Vec&)>& fn) const;
    std::vector<Vec> elements(std::uint64_t limit) const;

    bool operator==(const AffineSpace& o) const = default;

  private:
    Vec offset_;
    Subspace direction_;
};

// Row operations shared by the decomposition routines. Rows are dense vectors
// over F_q; rref returns the pivot column of each surviving row.
std::vector<std::uint32_t> rref_in_place(std::vector<Vec>& rows, std::uint32_t q);

/// Basis (RREF) of {x : sum_j x_j * rows[j] = 0}, the left kernel.
std::vector<Vec> left_kernel(const std::vector<Vec>& rows, std::uint32_t ncols, std::uint32_t q);

/// One solution x of sum_j x_j * rows[j] = target, or nullopt if inconsistent.
std::optional<Vec> solve_left(const std::vector<Vec>& rows, const Vec& target, std::uint32_t q);

}  // namespace listrec
