#pragma once

#include <cstdint>
#include <vector>

#include "listrec/instance.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// Compact description of A_1 + ... + A_m = {a_1 + ... + a_m : a_i in A_i}
/// together with its declared bounds: at most u summands, each of at most v
/// vectors. An empty summand list describes {0}; an empty summand describes
/// the empty set.
struct SumSet {
    Shape shape;
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::vector<std::vector<Vec>> summands;

    bool operator==(const SumSet&) const = default;
};

/// Where the independence positions live. row_sets[j] holds the rows of
/// coordinate coords[j] whose values are linearly independent across the
/// space; the row counts sum to the space dimension.
struct AgreementCertificate {
    std::vector<std::uint32_t> coords;
    std::vector<std::vector<std::uint32_t>> row_sets;

    bool operator==(const AgreementCertificate&) const = default;
};

struct ReduceResult {
    SumSet sumset;
    AgreementCertificate certificate;
};

/// Rewrites {c in space : c_t in L_t for every t in coords} as a subset of a
/// sum-set with one summand per agreement coordinate that received
/// independence positions. coords must be strictly increasing, at most
/// dim(space) long, and pin the space down to {0}; every summand then has at
/// most ell vectors.
ReduceResult reduce_certified(const Subspace& space, const std::vector<std::uint32_t>& coords,
                              const ListRecoveryInstance& inst);
SumSet reduce(const Subspace& space, const std::vector<std::uint32_t>& coords,
              const ListRecoveryInstance& inst);

/// Every represented vector, sorted and deduplicated. Throws
/// std::length_error when the combination count exceeds limit.
std::vector<Vec> enumerate_sumset(const SumSet& p, std::uint64_t limit = enumeration_limit());

/// Membership by enumeration; same limit rules as enumerate_sumset.
bool sumset_member(const SumSet& p, const Vec& v, std::uint64_t limit = enumeration_limit());

}  // namespace listrec
