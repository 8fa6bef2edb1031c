#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "listrec/frs.hpp"
#include "listrec/instance.hpp"
#include "listrec/prune.hpp"
#include "listrec/sumset.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// How the step-1 affine space is obtained. whole_code uses the full code as
/// a dim-k linear space and is always available; oracle_hull takes the affine
/// hull of the brute-forced exact list and needs q^k within the enumeration
/// limit.
enum class Step1Mode { whole_code, oracle_hull };

struct RecoveryConfig {
    std::uint32_t r = 0;  // dimension budget; 0 = use the step-1 dimension
    Rational eta = ratio(1, 4);
    Rational eta_prime = ratio(1, 4);
    std::uint32_t t = 0;  // repetitions; 0 = derive from (r, eta, ell, t_prime)
    double t_prime = 1.0;
    std::uint64_t seed = 0;
    Step1Mode step1_mode = Step1Mode::whole_code;
    bool exact_filter = false;
};

struct RunRecord {
    PruneTrace trace;
    std::optional<SumSet> sumset;  // absent when the run failed
    /// With exact_filter: the sum-set members that lie in the step-1 space
    /// within distance delta of the lists.
    std::optional<std::vector<Vec>> exact_members;
};

struct RecoveryOutput {
    RecoveryConfig config;             // resolved copy: r and t filled in
    std::optional<AffineSpace> space;  // nullopt when step 1 proves the list empty
    Vec offset;                        // re-added to the first summand of every sum-set
    std::vector<RunRecord> runs;

    std::vector<SumSet> sumsets() const;
};

/// All codewords within distance delta of the lists, by full enumeration.
/// Sorted; throws std::length_error when q^k exceeds limit.
std::vector<Vec> exact_list(const FrsCode& code, const ListRecoveryInstance& inst,
                            std::uint64_t limit = enumeration_limit());

/// nullopt only in oracle_hull mode with an empty exact list.
std::optional<AffineSpace> step1_affine_space(const FrsCode& code,
                                              const ListRecoveryInstance& inst, Step1Mode mode,
                                              std::uint64_t limit = enumeration_limit());

/// ceil(((r+eta)/eta) * (r*ln(ell) + ln(r/eta + 1) + t_prime)), at least 1.
std::uint32_t derive_repetitions(std::uint32_t r, const Rational& eta, std::uint32_t ell,
                                 double t_prime);

/// The full pipeline: acquire the step-1 space, rewrite the problem around the
/// origin, run the aggressive pruner t times (streams seed/1..seed/t), convert
/// every non-failed agreement set to a sum-set, and translate the sum-sets
/// back by the offset. Every emitted sum-set is declared
/// (min(r, trace_length_bound(r, eta')), ell).
RecoveryOutput recover(const FrsCode& code, const ListRecoveryInstance& inst,
                       const RecoveryConfig& cfg);

/// {c in space : distance to lists < 1 - (tau(r)+eta)/(1-eta')}, the set the
/// coverage guarantee quantifies over. Sorted; enumerates the space.
std::vector<Vec> theorem_list(const FrsCode& code, const AffineSpace& space,
                              const ListRecoveryInstance& inst, std::uint32_t r,
                              const PruneParams& params,
                              std::uint64_t limit = enumeration_limit());

/// True when every target is represented by some run's sum-set.
bool covers_all(const RecoveryOutput& out, const std::vector<Vec>& targets,
                std::uint64_t limit = enumeration_limit());

/// ell^min(r, trace_length_bound(r, eta')) * (r/eta + 1), approximately.
double bound_list_size(std::uint32_t r, const Rational& eta, const Rational& eta_prime,
                       std::uint32_t ell);

/// (ell/(tau_r+epsilon))^((tau_r+epsilon)/epsilon), approximately. Requires
/// epsilon > 0 and tau_r + epsilon <= 1.
double bound_bcz(std::uint32_t ell, const Rational& tau_r, const Rational& epsilon);

/// Parameter instantiation guaranteeing output list size independent of s and
/// n at decoding radius 1 - rate - epsilon, for folding order s >= s0.
struct FrsTheoremParams {
    std::uint32_t r = 0;
    std::uint32_t s0 = 0;
    Rational eta;
    Rational eta_prime;
    std::uint32_t sumset_dim_bound = 0;  // every sum-set has at most this many summands
    std::uint32_t t = 0;                 // repetitions at t_prime = 1
};
FrsTheoremParams frs_theorem_params(const Rational& rate, const Rational& epsilon,
                                    std::uint32_t ell);

}  // namespace listrec
