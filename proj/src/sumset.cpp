#include "listrec/sumset.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace listrec {

namespace {

void check_coords(const Subspace& space, const std::vector<std::uint32_t>& coords) {
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] >= space.shape().n)
            throw std::invalid_argument("agreement coordinate out of range");
        if (j > 0 && coords[j] <= coords[j - 1])
            throw std::invalid_argument("agreement coordinates must be strictly increasing");
    }
    if (coords.size() > space.dim())
        throw std::invalid_argument("more agreement coordinates than space dimensions");
}

}  // namespace

ReduceResult reduce_certified(const Subspace& space, const std::vector<std::uint32_t>& coords,
                              const ListRecoveryInstance& inst) {
    if (inst.shape() != space.shape()) throw std::invalid_argument("instance shape mismatch");
    check_coords(space, coords);

    const Shape shape = space.shape();
    const std::uint32_t q = shape.q;
    const std::uint32_t r = space.dim();
    const auto m = static_cast<std::uint32_t>(coords.size());

    // Restriction of the basis to the agreement coordinates; columns follow
    // flat scan order (blocks by increasing t, rows 0..s-1 inside each).
    std::vector<Vec> restricted(r, Vec(std::size_t{m} * shape.s));
    for (std::uint32_t a = 0; a < r; ++a)
        for (std::uint32_t j = 0; j < m; ++j)
            for (std::uint32_t row = 0; row < shape.s; ++row)
                restricted[a][std::size_t{j} * shape.s + row] =
                    space.basis()[a][std::size_t{coords[j]} * shape.s + row];

    std::vector<Vec> echelon = restricted;
    const std::vector<std::uint32_t> pivot_cols = rref_in_place(echelon, q);
    // Rank r here is the same thing as: no nonzero space vector vanishes on
    // all agreement coordinates.
    if (pivot_cols.size() != r)
        throw std::invalid_argument("space is not pinned to zero by the agreement coordinates");

    AgreementCertificate certificate;
    certificate.coords = coords;
    certificate.row_sets.assign(m, {});
    for (std::uint32_t col : pivot_cols)
        certificate.row_sets[col / shape.s].push_back(col % shape.s);

    // Prescribing values on the r pivot positions determines a unique space
    // element, so each list symbol yields one summand vector.
    std::vector<Vec> pivot_block(r, Vec(r));
    for (std::uint32_t a = 0; a < r; ++a)
        for (std::uint32_t b = 0; b < r; ++b) pivot_block[a][b] = restricted[a][pivot_cols[b]];

    SumSet sumset;
    sumset.shape = shape;
    sumset.u = m;
    sumset.v = inst.ell();
    for (std::uint32_t j = 0; j < m; ++j) {
        if (certificate.row_sets[j].empty()) continue;  // contributes only 0
        std::vector<Vec> summand;
        for (const Symbol& beta : inst.lists()[coords[j]]) {
            Vec target(r, 0);
            for (std::uint32_t b = 0; b < r; ++b)
                if (pivot_cols[b] / shape.s == j) target[b] = beta[pivot_cols[b] % shape.s];
            const std::optional<Vec> coeffs = solve_left(pivot_block, target, q);
            if (!coeffs) throw std::logic_error("independence positions lost rank");
            Vec sum(shape.flat_len(), 0);
            for (std::uint32_t a = 0; a < r; ++a)
                for (std::uint32_t pos = 0; pos < shape.flat_len(); ++pos)
                    sum[pos] = addm(sum[pos], mulm((*coeffs)[a], space.basis()[a][pos], q), q);
            summand.push_back(std::move(sum));
        }
        std::sort(summand.begin(), summand.end());
        summand.erase(std::unique(summand.begin(), summand.end()), summand.end());
        sumset.summands.push_back(std::move(summand));
    }
    return {std::move(sumset), std::move(certificate)};
}

SumSet reduce(const Subspace& space, const std::vector<std::uint32_t>& coords,
              const ListRecoveryInstance& inst) {
    return reduce_certified(space, coords, inst).sumset;
}

std::vector<Vec> enumerate_sumset(const SumSet& p, std::uint64_t limit) {
    BigInt combos = 1;
    for (const auto& summand : p.summands) {
        combos *= static_cast<std::uint64_t>(summand.size());
        for (const Vec& a : summand)
            if (a.size() != p.shape.flat_len())
                throw std::invalid_argument("summand vector length mismatch");
    }
    if (combos > limit) throw std::length_error("sum-set combination count exceeds limit");
    if (combos == 0) return {};

    const std::uint32_t q = p.shape.q;
    std::vector<Vec> out;
    std::vector<std::size_t> index(p.summands.size(), 0);
    while (true) {
        Vec sum(p.shape.flat_len(), 0);
        for (std::size_t j = 0; j < index.size(); ++j) {
            const Vec& a = p.summands[j][index[j]];
            for (std::size_t pos = 0; pos < sum.size(); ++pos) sum[pos] = addm(sum[pos], a[pos], q);
        }
        out.push_back(std::move(sum));

        std::size_t j = index.size();
        while (j > 0) {
            if (++index[j - 1] < p.summands[j - 1].size()) break;
            index[j - 1] = 0;
            --j;
        }
        if (j == 0) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool sumset_member(const SumSet& p, const Vec& v, std::uint64_t limit) {
    if (v.size() != p.shape.flat_len()) throw std::invalid_argument("vector length mismatch");
    const std::vector<Vec> all = enumerate_sumset(p, limit);
    return std::binary_search(all.begin(), all.end(), v);
}

}  // namespace listrec
