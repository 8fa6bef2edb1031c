#pragma once

#include <cstdint>
#include <vector>

#include "listrec/frs.hpp"
#include "listrec/rng.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// Global enumeration budget: LISTREC_ENUM_LIMIT env var, default 10^6.
std::uint64_t enumeration_limit();

/// Input to list recovery: one candidate-symbol set per coordinate, the
/// declared maximum list size, and the decoding radius. Lists are kept sorted
/// and deduplicated so instances with equal content compare equal and
/// serialize identically.
class ListRecoveryInstance {
  public:
    ListRecoveryInstance(Shape shape, std::vector<std::vector<Symbol>> lists, std::uint32_t ell,
                         Rational delta);

    Shape shape() const { return shape_; }
    const std::vector<std::vector<Symbol>>& lists() const { return lists_; }
    std::uint32_t ell() const { return ell_; }
    const Rational& delta() const { return delta_; }

    bool contains(std::uint32_t coord, const Symbol& symbol) const;

    /// |{i : v_i not in L_i}| / n, exact.
    Rational distance_to_lists(const Vec& v) const;
    std::uint32_t disagreement_count(const Vec& v) const;

    /// Same lists with `offset` subtracted coordinatewise from every symbol.
    ListRecoveryInstance translated(const Vec& offset) const;

    bool operator==(const ListRecoveryInstance& o) const = default;

  private:
    Shape shape_;
    std::vector<std::vector<Symbol>> lists_;
    std::uint32_t ell_;
    Rational delta_;
};

/// Affine problem rewritten around the origin: the direction subspace, the
/// lists shifted by the offset, and the offset to re-add to outputs.
struct TranslatedProblem {
    Subspace space;
    ListRecoveryInstance lists;
    Vec offset;
};
TranslatedProblem translate_to_linear(const AffineSpace& space, const ListRecoveryInstance& inst);

struct PlantedInstance {
    ListRecoveryInstance instance;
    std::vector<Vec> planted;  // the codewords the lists were built around
};

/// Builds lists around `count` random distinct codewords: each planted
/// codeword contributes its symbol on all but a `noise` fraction of
/// coordinates (corrupted coordinates chosen per codeword), then every list is
/// padded with distinct uniform junk symbols up to size ell. delta = noise.
PlantedInstance make_planted_instance(const FrsCode& code, std::uint32_t count, std::uint32_t ell,
                                      const Rational& noise, Rng& rng);

}  // namespace listrec
