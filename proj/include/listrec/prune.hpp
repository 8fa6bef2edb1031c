#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "listrec/gf.hpp"
#include "listrec/instance.hpp"
#include "listrec/rng.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

struct PruneParams {
    Rational eta;        // > 0
    Rational eta_prime;  // in [0, 1)

    PruneParams(Rational eta_, Rational eta_prime_);
};

/// Record of one aggressive-pruning run: the pinned coordinates in pin order,
/// the dimension after each pin (strictly decreasing), and whether the run got
/// stuck with an empty qualifying set before reaching dimension zero.
struct PruneTrace {
    std::vector<std::uint32_t> pinned;
    std::vector<std::uint32_t> dims;
    bool failed = false;
};

/// wt_eta(H) = dim(H) + eta.
Rational weight(const Subspace& space, const Rational& eta);

/// Per-coordinate pinning distribution of the aggressive pruner. A coordinate
/// qualifies when wt(H_i) <= (1 - eta')*wt(H) and H_i != H; the second
/// condition is implied by the first whenever eta' > 0 and keeps the eta' = 0
/// case consistent with the received-word weighting rule (a pin must reduce
/// the dimension). Qualifying coordinate i is sampled with probability
/// weight[i] / total.
struct WeightProfile {
    std::vector<std::uint32_t> qualifying;
    std::vector<Rational> weights;
    std::vector<Subspace> restricted;  // H_i for each qualifying i
    Rational total;
};
WeightProfile weight_profile(const Subspace& space, const PruneParams& params);

/// Aggressive codeword-oblivious pruning: repeatedly sample a coordinate from
/// the weight profile and restrict to the vectors vanishing there, until the
/// space is {0} (or no coordinate qualifies: failed run).
PruneTrace fprune(const Subspace& space, const PruneParams& params, Rng& rng);

/// min(r, ceil((1/eta')*(1 + max(0, ln(r*eta'))))), the pin-count bound of a
/// non-failed run; r alone when eta' = 0. Natural log; the clamped branch is
/// evaluated on exact rationals.
std::uint32_t trace_length_bound(std::uint32_t r, const Rational& eta_prime);

/// Potential f_{eta,eta'}(H, c, T, lists): 0 if c leaves some list on T, else
/// (1-eta')^|T| / wt_eta(H). Requires H identically zero on T.
Rational potential(const Subspace& space, const Vec& c, const std::vector<std::uint32_t>& T,
                   const ListRecoveryInstance& lists, const PruneParams& params);

/// Exact expectation of the potential after one sampling step,
/// sum over qualifying i of p_i * potential(H_i, c, T + {i}, ...).
/// Requires dim >= 1, c in H, and a nonempty qualifying set.
Rational expected_potential_step(const Subspace& space, const Vec& c,
                                 const std::vector<std::uint32_t>& T,
                                 const ListRecoveryInstance& lists, const PruneParams& params);

/// Received-word pruning with uniform coordinate choice: pin random
/// coordinates to agree with y until a single vector remains; nullopt when a
/// pin empties the space.
std::optional<Vec> prune_uniform(const AffineSpace& space, const Vec& y, Rng& rng);

/// Received-word pruning with dimension-based weights w_i = dim(H_i) + epsilon
/// (0 when H_i is empty or all of H), H_i = {h : h_i = y_i}.
std::optional<Vec> prune_ahs(const AffineSpace& space, const Vec& y, const Rational& epsilon,
                             Rng& rng);

}  // namespace listrec
