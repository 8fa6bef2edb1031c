#include "listrec/vspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace listrec {

namespace {

void validate_shape(const Shape& shape) {
    if (shape.n == 0 || shape.s == 0) throw std::invalid_argument("Shape: n and s must be positive");
    if (shape.q < 2 || shape.q >= (1u << 31) || !is_prime(shape.q)) {
        throw std::invalid_argument("Shape: q must be a prime below 2^31");
    }
}

void validate_vec(const Vec& v, const Shape& shape) {
    if (v.size() != shape.flat_len()) throw std::invalid_argument("Vec: wrong length for shape");
    for (std::uint32_t x : v) {
        if (x >= shape.q) throw std::invalid_argument("Vec: residue out of range");
    }
}

// v += c * row
void add_scaled(Vec& v, const Vec& row, std::uint32_t c, std::uint32_t q) {
    if (c == 0) return;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = addm(v[j], mulm(c, row[j], q), q);
}

// v -= c * row
void sub_scaled(Vec& v, const Vec& row, std::uint32_t c, std::uint32_t q) {
    if (c == 0) return;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = subm(v[j], mulm(c, row[j], q), q);
}

std::vector<Vec> transpose(const std::vector<Vec>& rows, std::size_t ncols) {
    std::vector<Vec> out(ncols, Vec(rows.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < ncols; ++j) out[j][i] = rows[i][j];
    }
    return out;
}

}  // namespace

Symbol symbol_at(const Vec& v, const Shape& shape, std::uint32_t coord) {
    if (coord >= shape.n) throw std::out_of_range("symbol_at: coordinate out of range");
    return Symbol(v.begin() + static_cast<std::ptrdiff_t>(coord) * shape.s,
                  v.begin() + static_cast<std::ptrdiff_t>(coord + 1) * shape.s);
}

std::vector<std::uint32_t> rref_in_place(std::vector<Vec>& rows, std::uint32_t q) {
    std::vector<std::uint32_t> pivots;
    if (rows.empty()) return pivots;
    std::size_t ncols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::uint32_t inv = invm(rows[rank][col], q);
        for (std::size_t j = col; j < ncols; ++j) rows[rank][j] = mulm(inv, rows[rank][j], q);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank) sub_scaled(rows[i], rows[rank], rows[i][col], q);
        }
        pivots.push_back(static_cast<std::uint32_t>(col));
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

std::vector<Vec> left_kernel(const std::vector<Vec>& rows, std::uint32_t ncols, std::uint32_t q) {
    std::size_t m = rows.size();
    if (m == 0) return {};
    auto at = transpose(rows, ncols);  // ncols x m; right kernel of this is the left kernel of rows
    auto pivots = rref_in_place(at, q);
    std::vector<bool> is_pivot(m, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> kernel;
    for (std::size_t f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        Vec x(m, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            std::uint32_t v = at[i][f];
            x[pivots[i]] = v == 0 ? 0 : q - v;
        }
        kernel.push_back(std::move(x));
    }
    rref_in_place(kernel, q);
    return kernel;
}

std::optional<Vec> solve_left(const std::vector<Vec>& rows, const Vec& target, std::uint32_t q) {
    std::size_t m = rows.size();
    std::size_t ncols = target.size();
    std::vector<Vec> aug(ncols, Vec(m + 1, 0));
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != ncols) throw std::invalid_argument("solve_left: row length mismatch");
        for (std::size_t j = 0; j < ncols; ++j) aug[j][i] = rows[i][j];
    }
    for (std::size_t j = 0; j < ncols; ++j) aug[j][m] = target[j];
    auto pivots = rref_in_place(aug, q);
    Vec x(m, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == m) return std::nullopt;  // pivot in the constants column
        x[pivots[i]] = aug[i][m];
    }
    return x;
}

Subspace::Subspace(Shape shape) : shape_(shape) { validate_shape(shape); }

Subspace Subspace::span(Shape shape, const std::vector<Vec>& vectors) {
    Subspace out(shape);
    std::vector<Vec> rows;
    rows.reserve(vectors.size());
    for (const Vec& v : vectors) {
        validate_vec(v, shape);
        rows.push_back(v);
    }
    out.pivots_ = rref_in_place(rows, shape.q);
    out.basis_ = std::move(rows);
    return out;
}

Vec Subspace::reduce_mod(const Vec& v) const {
    validate_vec(v, shape_);
    Vec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        sub_scaled(r, basis_[i], r[pivots_[i]], shape_.q);
    }
    return r;
}

bool Subspace::member(const Vec& v) const {
    Vec r = reduce_mod(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

Subspace Subspace::coordinate_zero(std::uint32_t coord) const {
    if (coord >= shape_.n) throw std::out_of_range("coordinate_zero: coordinate out of range");
    if (basis_.empty()) return *this;
    std::vector<Vec> block(basis_.size(), Vec(shape_.s, 0));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::uint32_t j = 0; j < shape_.s; ++j) block[i][j] = basis_[i][coord * shape_.s + j];
    }
    auto kernel = left_kernel(block, shape_.s, shape_.q);
    std::vector<Vec> rows;
    rows.reserve(kernel.size());
    for (const Vec& x : kernel) {
        Vec row(shape_.flat_len(), 0);
        for (std::size_t j = 0; j < basis_.size(); ++j) add_scaled(row, basis_[j], x[j], shape_.q);
        rows.push_back(std::move(row));
    }
    return span(shape_, rows);
}

BigInt Subspace::element_count() const {
    return boost::multiprecision::pow(BigInt(shape_.q), dim());
}

void Subspace::for_each_element(std::uint64_t limit,
                                const std::function<void(const Vec&)>& fn) const {
    if (element_count() > limit) {
        throw std::length_error("Subspace enumeration exceeds limit");
    }
    Vec cur(shape_.flat_len(), 0);
    fn(cur);
    if (basis_.empty()) return;
    std::vector<std::uint32_t> digits(basis_.size(), 0);
    for (;;) {
        // Odometer increment: adding a basis row q times is a no-op, so a digit
        // rollover is realized by the same row addition that carries.
        std::size_t j = basis_.size();
        while (j > 0) {
            --j;
            add_scaled(cur, basis_[j], 1, shape_.q);
            if (++digits[j] < shape_.q) break;
            digits[j] = 0;
            if (j == 0) return;  // wrapped all the way around
        }
        fn(cur);
    }
}

std::vector<Vec> Subspace::elements(std::uint64_t limit) const {
    std::vector<Vec> out;
    for_each_element(limit, [&](const Vec& v) { out.push_back(v); });
    return out;
}

Rational design_statistic(const Subspace& subspace) {
    if (subspace.dim() == 0) {
        throw std::invalid_argument("design_statistic: subspace must have positive dimension");
    }
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < subspace.shape().n; ++i) {
        total += subspace.coordinate_zero(i).dim();
    }
    return Rational(BigInt(total), BigInt(subspace.shape().n));
}

AffineSpace::AffineSpace(Vec offset, Subspace direction) : direction_(std::move(direction)) {
    offset_ = direction_.reduce_mod(offset);
}

bool AffineSpace::member(const Vec& v) const {
    Vec r = direction_.reduce_mod(v);
    return r == offset_;
}

std::optional<AffineSpace> AffineSpace::restrict_symbol(std::uint32_t coord,
                                                        const Symbol& symbol) const {
    const Shape sh = shape();
    if (coord >= sh.n) throw std::out_of_range("restrict_symbol: coordinate out of range");
    if (symbol.size() != sh.s) throw std::invalid_argument("restrict_symbol: symbol length");
    const auto& basis = direction_.basis();
    std::vector<Vec> block(basis.size(), Vec(sh.s, 0));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::uint32_t j = 0; j < sh.s; ++j) block[i][j] = basis[i][coord * sh.s + j];
    }
    Vec target(sh.s, 0);
    for (std::uint32_t j = 0; j < sh.s; ++j) {
        if (symbol[j] >= sh.q) throw std::invalid_argument("restrict_symbol: residue out of range");
        target[j] = subm(symbol[j], offset_[coord * sh.s + j], sh.q);
    }
    auto particular = solve_left(block, target, sh.q);
    if (!particular) return std::nullopt;
    Vec new_offset = offset_;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        add_scaled(new_offset, basis[j], (*particular)[j], sh.q);
    }
    auto kernel = left_kernel(block, sh.s, sh.q);
    std::vector<Vec> rows;
    rows.reserve(kernel.size());
    for (const Vec& x : kernel) {
        Vec row(sh.flat_len(), 0);
        for (std::size_t j = 0; j < basis.size(); ++j) add_scaled(row, basis[j], x[j], sh.q);
        rows.push_back(std::move(row));
    }
    return AffineSpace(std::move(new_offset), Subspace::span(sh, rows));
}

void AffineSpace::for_each_element(std::uint64_t limit,
                                   const std::function<void(const Vec&)>& fn) const {
    const Shape sh = shape();
    Vec tmp(sh.flat_len());
    direction_.for_each_element(limit, [&](const Vec& h) {
        for (std::size_t j = 0; j < tmp.size(); ++j) tmp[j] = addm(offset_[j], h[j], sh.q);
        fn(tmp);
    });
}

std::vector<Vec> AffineSpace::elements(std::uint64_t limit) const {
    std::vector<Vec> out;
    for_each_element(limit, [&](const Vec& v) { out.push_back(v); });
    return out;
}

}  // namespace listrec
