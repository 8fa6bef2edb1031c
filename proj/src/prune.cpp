#include "listrec/prune.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace listrec {

PruneParams::PruneParams(Rational eta_, Rational eta_prime_)
    : eta(std::move(eta_)), eta_prime(std::move(eta_prime_)) {
    if (!(eta > Rational(0))) throw std::invalid_argument("PruneParams: eta must be positive");
    if (eta_prime.is_negative() || !(eta_prime < Rational(1))) {
        throw std::invalid_argument("PruneParams: eta_prime must lie in [0, 1)");
    }
}

Rational weight(const Subspace& space, const Rational& eta) {
    return Rational(BigInt(space.dim()), BigInt(1)) + eta;
}

WeightProfile weight_profile(const Subspace& space, const PruneParams& params) {
    if (space.dim() == 0) throw std::invalid_argument("weight_profile: dim must be >= 1");
    WeightProfile profile;
    profile.total = Rational(0);
    const Rational cutoff = (Rational(1) - params.eta_prime) * weight(space, params.eta);
    for (std::uint32_t i = 0; i < space.shape().n; ++i) {
        Subspace restricted = space.coordinate_zero(i);
        if (restricted.dim() == space.dim()) continue;  // pin would not shrink the space
        Rational w = weight(restricted, params.eta);
        if (w > cutoff) continue;
        profile.total += w;
        profile.qualifying.push_back(i);
        profile.weights.push_back(std::move(w));
        profile.restricted.push_back(std::move(restricted));
    }
    return profile;
}

namespace {

// Weights share the denominator of eta, so sampling reduces to integer weights
// dim(H_i)*den + num.
std::size_t sample_profile(const WeightProfile& profile, const Rational& eta, Rng& rng) {
    std::vector<std::uint64_t> scaled(profile.weights.size());
    for (std::size_t j = 0; j < profile.weights.size(); ++j) {
        BigInt u = profile.restricted[j].dim() * eta.den() + eta.num();
        if (u > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("fprune: eta denominator too large for integer sampling");
        }
        scaled[j] = u.convert_to<std::uint64_t>();
    }
    return rng.pick_weighted(scaled);
}

}  // namespace

PruneTrace fprune(const Subspace& space, const PruneParams& params, Rng& rng) {
    PruneTrace trace;
    Subspace current = space;
    while (current.dim() > 0) {
        WeightProfile profile = weight_profile(current, params);
        if (profile.qualifying.empty()) {
            trace.failed = true;
            return trace;
        }
        std::size_t j = sample_profile(profile, params.eta, rng);
        trace.pinned.push_back(profile.qualifying[j]);
        current = std::move(profile.restricted[j]);
        trace.dims.push_back(current.dim());
    }
    return trace;
}

std::uint32_t trace_length_bound(std::uint32_t r, const Rational& eta_prime) {
    if (r == 0) throw std::invalid_argument("trace_length_bound: r must be >= 1");
    if (eta_prime.is_zero()) return r;
    const Rational re = Rational(BigInt(r), BigInt(1)) * eta_prime;
    BigInt bound;
    if (re <= Rational(1)) {
        // log term clamps to 0; ceil(1/eta') is exact.
        bound = rational_ceil(Rational(1) / eta_prime);
    } else {
        double val = (Rational(1) / eta_prime).to_double() * (1.0 + std::log(re.to_double()));
        bound = BigInt(static_cast<long long>(std::ceil(val)));
    }
    return bound >= r ? r : bound.convert_to<std::uint32_t>();
}

namespace {
std::vector<std::uint32_t> sorted_unique(const std::vector<std::uint32_t>& T, std::uint32_t n) {
    std::vector<std::uint32_t> out = T;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= n) throw std::out_of_range("coordinate set out of range");
    return out;
}
}  // namespace

Rational potential(const Subspace& space, const Vec& c, const std::vector<std::uint32_t>& T,
                   const ListRecoveryInstance& lists, const PruneParams& params) {
    const Shape shape = space.shape();
    if (lists.shape() != shape) throw std::invalid_argument("potential: shape mismatch");
    if (c.size() != shape.flat_len()) throw std::invalid_argument("potential: shape mismatch");
    auto pins = sorted_unique(T, shape.n);
    for (const Vec& row : space.basis()) {
        for (std::uint32_t t : pins) {
            for (std::uint32_t j = 0; j < shape.s; ++j) {
                if (row[t * shape.s + j] != 0) {
                    throw std::invalid_argument("potential: space must vanish on T");
                }
            }
        }
    }
    for (std::uint32_t t : pins) {
        if (!lists.contains(t, symbol_at(c, shape, t))) return Rational(0);
    }
    return (Rational(1) - params.eta_prime).pow(static_cast<unsigned>(pins.size())) /
           weight(space, params.eta);
}

Rational expected_potential_step(const Subspace& space, const Vec& c,
                                 const std::vector<std::uint32_t>& T,
                                 const ListRecoveryInstance& lists, const PruneParams& params) {
    if (space.dim() == 0) throw std::invalid_argument("expected_potential_step: dim must be >= 1");
    if (!space.member(c)) throw std::invalid_argument("expected_potential_step: c must lie in the space");
    WeightProfile profile = weight_profile(space, params);
    if (profile.qualifying.empty()) {
        throw std::invalid_argument("expected_potential_step: empty qualifying set");
    }
    Rational acc(0);
    for (std::size_t j = 0; j < profile.qualifying.size(); ++j) {
        std::vector<std::uint32_t> extended = T;
        extended.push_back(profile.qualifying[j]);
        Rational p = profile.weights[j] / profile.total;
        acc += p * potential(profile.restricted[j], c, extended, lists, params);
    }
    return acc;
}

namespace {

// Shared driver for the two received-word pruners.
std::optional<Vec> prune_with(const AffineSpace& space, const Vec& y, Rng& rng,
                              const Rational& epsilon, bool uniform) {
    const Shape shape = space.shape();
    if (y.size() != shape.flat_len()) throw std::invalid_argument("prune: shape mismatch");
    AffineSpace current = space;
    std::vector<std::uint32_t> candidates(shape.n);
    for (std::uint32_t i = 0; i < shape.n; ++i) candidates[i] = i;
    while (current.dim() > 0) {
        if (uniform) {
            // Uniform pick over coordinates not yet pinned; re-picking a pinned
            // coordinate would be a no-op, so skipping them leaves the output
            // distribution unchanged.
            std::size_t idx = rng.below(candidates.size());
            std::uint32_t i = candidates[idx];
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
            auto restricted = current.restrict_symbol(i, symbol_at(y, shape, i));
            if (!restricted) return std::nullopt;
            current = std::move(*restricted);
        } else {
            std::vector<AffineSpace> options;
            std::vector<std::uint64_t> scaled;
            for (std::uint32_t i = 0; i < shape.n; ++i) {
                auto restricted = current.restrict_symbol(i, symbol_at(y, shape, i));
                if (!restricted || restricted->dim() == current.dim()) continue;  // empty or H_i = H
                BigInt u = restricted->dim() * epsilon.den() + epsilon.num();
                if (u > std::numeric_limits<std::uint64_t>::max()) {
                    throw std::overflow_error("prune_ahs: epsilon denominator too large");
                }
                scaled.push_back(u.convert_to<std::uint64_t>());
                options.push_back(std::move(*restricted));
            }
            if (options.empty()) return std::nullopt;  // all weights zero
            current = std::move(options[rng.pick_weighted(scaled)]);
        }
    }
    return current.offset();
}

}  // namespace

std::optional<Vec> prune_uniform(const AffineSpace& space, const Vec& y, Rng& rng) {
    return prune_with(space, y, rng, Rational(1), true);
}

std::optional<Vec> prune_ahs(const AffineSpace& space, const Vec& y, const Rational& epsilon,
                             Rng& rng) {
    if (!(epsilon > Rational(0))) throw std::invalid_argument("prune_ahs: epsilon must be positive");
    return prune_with(space, y, rng, epsilon, false);
}

}  // namespace listrec
