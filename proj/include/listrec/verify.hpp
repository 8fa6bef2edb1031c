#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "listrec/frs.hpp"
#include "listrec/instance.hpp"
#include "listrec/prune.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// Outcome of checking design_statistic(H) <= r * tau(r) * tau_scale over
/// dim-r subspaces of the code. tau_scale defaults to 1; smaller values
/// tighten the bound artificially so the harness can be shown to fail.
struct DesignReport {
    std::uint32_t r = 0;
    std::uint64_t subspaces_checked = 0;
    Rational max_statistic;
    Rational bound;
    std::uint64_t violation_count = 0;
    std::vector<Subspace> violations;  // first few violators, kept small

    bool pass() const { return violation_count == 0; }
};

/// Every dim-r subspace of the code, enumerated through reduced echelon
/// coefficient matrices over the message space. Throws std::length_error when
/// the subspace count exceeds limit.
DesignReport verify_design_exhaustive(const FrsCode& code, std::uint32_t r,
                                      const Rational& tau_scale = Rational(1),
                                      std::uint64_t limit = enumeration_limit());

/// Spans of r random codewords, rank-deficient draws rejected.
DesignReport verify_design_sampled(const FrsCode& code, std::uint32_t r, std::uint64_t samples,
                                   std::uint64_t seed, const Rational& tau_scale = Rational(1));

/// Monte Carlo check of a one-sided probability floor. The estimate is exact
/// (trial statistics are rationals); pass compares it against
/// floor - z_margin, with z_margin three conservative binomial standard
/// errors. When the instance misses the floor's distance hypothesis no
/// pass/fail claim is made.
struct EstimatorReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    Rational estimate;
    Rational floor;
    double z_margin = 0;
    bool hypothesis_met = false;

    std::optional<bool> pass() const;
};

/// Mean of X * (1-eta')^|T| over seeded aggressive-pruning runs, where X says
/// the planted vector agrees with the lists on every pinned coordinate; floor
/// eta/(dim+eta). Requires c in space and the space spanned by codewords.
/// Trial j runs on Rng::stream(seed, j), j = 1..trials, so runs can be
/// replayed exactly; the received-word estimators below use the same scheme.
EstimatorReport estimate_fprune_success(const FrsCode& code, const Subspace& space, const Vec& c,
                                        const ListRecoveryInstance& lists,
                                        const PruneParams& params, std::uint64_t trials,
                                        std::uint64_t seed);

/// Frequency of prune_ahs returning exactly c; floor epsilon/(dim+epsilon),
/// hypothesis distance(c, y) < 1 - tau(dim) - epsilon.
EstimatorReport estimate_ahs_success(const FrsCode& code, const AffineSpace& space, const Vec& y,
                                     const Vec& c, const Rational& epsilon, std::uint64_t trials,
                                     std::uint64_t seed);

/// Frequency of prune_uniform returning exactly c; floor epsilon^dim,
/// hypothesis distance(c, y) < relative_distance - epsilon.
EstimatorReport estimate_uniform_success(const FrsCode& code, const AffineSpace& space,
                                         const Vec& y, const Vec& c, const Rational& epsilon,
                                         std::uint64_t trials, std::uint64_t seed);

struct MonotonicityCounterexample {
    Subspace space;
    Vec c;
    ListRecoveryInstance lists;
    Rational before;
    Rational after;
};

struct MonotonicityReport {
    std::uint64_t checked = 0;
    std::uint64_t hypothesis_skipped = 0;
    std::vector<MonotonicityCounterexample> counterexamples;

    bool pass() const { return counterexamples.empty(); }
};

/// Exact-arithmetic audit of the one-step potential inequality
/// E[potential after one pin] >= potential, over random spans of 1..max_dim
/// codewords with lists built to satisfy the distance hypothesis.
MonotonicityReport audit_monotonicity(const FrsCode& code, std::uint32_t max_dim,
                                      std::uint32_t ell, std::uint32_t count,
                                      const PruneParams& params, std::uint64_t seed);

/// One decoding-radius row: exhaustive max list size inside the code over
/// sampled planted instances, against both closed-form bounds evaluated at
/// eta = epsilon/2, eta' = epsilon/(2(tau+epsilon)) so the pruning radius is
/// exactly 1 - tau(r) - epsilon.
struct BoundsRow {
    Rational epsilon;
    Rational radius;
    std::uint64_t exact_max = 0;
    double ours = 0;
    double bcz = 0;
};

std::vector<BoundsRow> bounds_table(const FrsCode& code, std::uint32_t r, std::uint32_t ell,
                                    const std::vector<Rational>& epsilon_grid,
                                    std::uint32_t instances_per_row, std::uint64_t seed,
                                    std::uint64_t limit = enumeration_limit());

}  // namespace listrec
