#include "listrec/instance.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace listrec {

std::uint64_t enumeration_limit() {
    static const std::uint64_t limit = [] {
        const char* env = std::getenv("LISTREC_ENUM_LIMIT");
        if (env && *env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
            throw std::invalid_argument("LISTREC_ENUM_LIMIT must be a positive integer");
        }
        return std::uint64_t{1000000};
    }();
    return limit;
}

ListRecoveryInstance::ListRecoveryInstance(Shape shape, std::vector<std::vector<Symbol>> lists,
                                           std::uint32_t ell, Rational delta)
    : shape_(shape), lists_(std::move(lists)), ell_(ell), delta_(std::move(delta)) {
    if (lists_.size() != shape_.n) throw std::invalid_argument("instance: need one list per coordinate");
    if (delta_.is_negative() || delta_ > Rational(1)) {
        throw std::invalid_argument("instance: delta must lie in [0, 1]");
    }
    for (auto& list : lists_) {
        for (const Symbol& sym : list) {
            if (sym.size() != shape_.s) throw std::invalid_argument("instance: symbol height must be s");
            for (std::uint32_t x : sym) {
                if (x >= shape_.q) throw std::invalid_argument("instance: residue out of range");
            }
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (list.size() > ell_) throw std::invalid_argument("instance: list exceeds declared ell");
    }
}

bool ListRecoveryInstance::contains(std::uint32_t coord, const Symbol& symbol) const {
    const auto& list = lists_.at(coord);
    return std::binary_search(list.begin(), list.end(), symbol);
}

std::uint32_t ListRecoveryInstance::disagreement_count(const Vec& v) const {
    if (v.size() != shape_.flat_len()) throw std::invalid_argument("distance: shape mismatch");
    std::uint32_t misses = 0;
    Symbol sym(shape_.s);
    for (std::uint32_t i = 0; i < shape_.n; ++i) {
        std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(i) * shape_.s, shape_.s, sym.begin());
        if (!contains(i, sym)) ++misses;
    }
    return misses;
}

Rational ListRecoveryInstance::distance_to_lists(const Vec& v) const {
    return Rational(BigInt(disagreement_count(v)), BigInt(shape_.n));
}

ListRecoveryInstance ListRecoveryInstance::translated(const Vec& offset) const {
    if (offset.size() != shape_.flat_len()) throw std::invalid_argument("translated: shape mismatch");
    std::vector<std::vector<Symbol>> shifted(shape_.n);
    for (std::uint32_t i = 0; i < shape_.n; ++i) {
        shifted[i].reserve(lists_[i].size());
        for (const Symbol& sym : lists_[i]) {
            Symbol t(shape_.s);
            for (std::uint32_t j = 0; j < shape_.s; ++j) {
                t[j] = subm(sym[j], offset[i * shape_.s + j], shape_.q);
            }
            shifted[i].push_back(std::move(t));
        }
    }
    return ListRecoveryInstance(shape_, std::move(shifted), ell_, delta_);
}

TranslatedProblem translate_to_linear(const AffineSpace& space, const ListRecoveryInstance& inst) {
    if (space.shape() != inst.shape()) throw std::invalid_argument("translate_to_linear: shape mismatch");
    return TranslatedProblem{space.direction(), inst.translated(space.offset()), space.offset()};
}

namespace {
Symbol random_symbol(const Shape& shape, Rng& rng) {
    Symbol sym(shape.s);
    for (std::uint32_t j = 0; j < shape.s; ++j) {
        sym[j] = static_cast<std::uint32_t>(rng.below(shape.q));
    }
    return sym;
}
}  // namespace

PlantedInstance make_planted_instance(const FrsCode& code, std::uint32_t count, std::uint32_t ell,
                                      const Rational& noise, Rng& rng) {
    if (ell == 0) throw std::invalid_argument("make_planted_instance: ell must be positive");
    if (noise.is_negative() || noise > Rational(1)) {
        throw std::invalid_argument("make_planted_instance: noise must lie in [0, 1]");
    }
    const Shape shape = code.shape();
    const std::uint32_t n = shape.n;
    std::uint32_t corrupt = static_cast<std::uint32_t>(
        rational_floor(noise * Rational(n)).convert_to<std::uint64_t>());

    std::vector<Vec> planted;
    while (planted.size() < count) {
        Vec msg(code.k());
        for (auto& c : msg) c = static_cast<std::uint32_t>(rng.below(shape.q));
        Vec cw = code.encode(msg);
        if (std::find(planted.begin(), planted.end(), cw) == planted.end()) {
            planted.push_back(std::move(cw));
        }
    }

    std::vector<std::vector<Symbol>> lists(n);
    for (const Vec& cw : planted) {
        // Choose `corrupt` coordinates to skip for this codeword.
        std::vector<std::uint32_t> perm(n);
        for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
        for (std::uint32_t i = 0; i < corrupt; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(rng.below(n - i));
            std::swap(perm[i], perm[j]);
        }
        for (std::uint32_t idx = corrupt; idx < n; ++idx) {
            std::uint32_t i = perm[idx];
            Symbol sym = symbol_at(cw, shape, i);
            auto& list = lists[i];
            if (std::find(list.begin(), list.end(), sym) == list.end()) {
                if (list.size() < ell) list.push_back(sym);
            }
        }
    }
    for (auto& list : lists) {
        while (list.size() < ell) {
            Symbol sym = random_symbol(shape, rng);
            if (std::find(list.begin(), list.end(), sym) == list.end()) list.push_back(sym);
        }
    }
    ListRecoveryInstance inst(shape, std::move(lists), ell, noise);
    return PlantedInstance{std::move(inst), std::move(planted)};
}

}  // namespace listrec
