#include "listrec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace listrec {

namespace {

std::uint32_t to_u32(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) throw std::overflow_error(what);
    return v.convert_to<std::uint32_t>();
}

void check_shapes(const FrsCode& code, const ListRecoveryInstance& inst) {
    if (inst.shape() != code.shape()) throw std::invalid_argument("instance shape mismatch");
}

}  // namespace

std::vector<SumSet> RecoveryOutput::sumsets() const {
    std::vector<SumSet> out;
    for (const RunRecord& rec : runs)
        if (rec.sumset) out.push_back(*rec.sumset);
    return out;
}

std::vector<Vec> exact_list(const FrsCode& code, const ListRecoveryInstance& inst,
                            std::uint64_t limit) {
    check_shapes(code, inst);
    std::vector<Vec> out;
    code.for_each_codeword(limit, [&](const Vec& c) {
        if (!(inst.distance_to_lists(c) > inst.delta())) out.push_back(c);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<AffineSpace> step1_affine_space(const FrsCode& code,
                                              const ListRecoveryInstance& inst, Step1Mode mode,
                                              std::uint64_t limit) {
    check_shapes(code, inst);
    const Shape shape = code.shape();
    if (mode == Step1Mode::whole_code)
        return AffineSpace(Vec(shape.flat_len(), 0), code.code_space());

    const std::vector<Vec> list = exact_list(code, inst, limit);
    if (list.empty()) return std::nullopt;
    std::vector<Vec> differences;
    differences.reserve(list.size() - 1);
    for (std::size_t j = 1; j < list.size(); ++j) {
        Vec d(shape.flat_len());
        for (std::uint32_t pos = 0; pos < shape.flat_len(); ++pos)
            d[pos] = subm(list[j][pos], list[0][pos], shape.q);
        differences.push_back(std::move(d));
    }
    return AffineSpace(list[0], Subspace::span(shape, differences));
}

std::uint32_t derive_repetitions(std::uint32_t r, const Rational& eta, std::uint32_t ell,
                                 double t_prime) {
    if (eta.is_zero() || eta.is_negative()) throw std::invalid_argument("eta must be positive");
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    if (!(t_prime > 0)) throw std::invalid_argument("t_prime must be positive");
    const double factor = ((Rational(r) + eta) / eta).to_double();
    const double inner =
        r * std::log(static_cast<double>(ell)) + std::log((Rational(r) / eta + 1).to_double()) +
        t_prime;
    const double t = std::ceil(factor * inner);
    if (t > 1e9) throw std::overflow_error("repetition count out of range");
    return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(t));
}

RecoveryOutput recover(const FrsCode& code, const ListRecoveryInstance& inst,
                       const RecoveryConfig& cfg) {
    check_shapes(code, inst);
    const PruneParams params(cfg.eta, cfg.eta_prime);
    if (!(cfg.t_prime > 0)) throw std::invalid_argument("t_prime must be positive");

    RecoveryOutput out;
    out.config = cfg;
    out.space = step1_affine_space(code, inst, cfg.step1_mode);
    if (!out.space) {
        out.config.r = std::max<std::uint32_t>(cfg.r, 1);
        out.config.t = 0;
        return out;
    }

    const std::uint32_t dim = out.space->dim();
    const std::uint32_t r = cfg.r == 0 ? std::max<std::uint32_t>(dim, 1) : cfg.r;
    if (dim > r) throw std::invalid_argument("step-1 space dimension exceeds the budget r");
    out.config.r = r;
    out.config.t = cfg.t == 0 ? derive_repetitions(r, cfg.eta, inst.ell(), cfg.t_prime) : cfg.t;

    const TranslatedProblem tp = translate_to_linear(*out.space, inst);
    out.offset = tp.offset;
    const Shape shape = code.shape();
    const std::uint32_t u_bound = std::min(r, trace_length_bound(r, cfg.eta_prime));

    out.runs.reserve(out.config.t);
    for (std::uint32_t j = 1; j <= out.config.t; ++j) {
        Rng rng = Rng::stream(cfg.seed, j);
        RunRecord rec;
        rec.trace = fprune(tp.space, params, rng);
        if (!rec.trace.failed) {
            std::vector<std::uint32_t> coords = rec.trace.pinned;
            std::sort(coords.begin(), coords.end());
            SumSet sumset = reduce(tp.space, coords, tp.lists);
            sumset.u = u_bound;
            // Fold the affine offset into the first summand so the sum-set
            // describes a superset of the original (untranslated) list.
            if (sumset.summands.empty()) sumset.summands.emplace_back(1, Vec(shape.flat_len(), 0));
            for (Vec& a : sumset.summands.front())
                for (std::uint32_t pos = 0; pos < shape.flat_len(); ++pos)
                    a[pos] = addm(a[pos], tp.offset[pos], shape.q);
            std::sort(sumset.summands.front().begin(), sumset.summands.front().end());
            if (cfg.exact_filter) {
                std::vector<Vec> members;
                for (const Vec& v : enumerate_sumset(sumset))
                    if (out.space->member(v) && !(inst.distance_to_lists(v) > inst.delta()))
                        members.push_back(v);
                rec.exact_members = std::move(members);
            }
            rec.sumset = std::move(sumset);
        }
        out.runs.push_back(std::move(rec));
    }
    return out;
}

std::vector<Vec> theorem_list(const FrsCode& code, const AffineSpace& space,
                              const ListRecoveryInstance& inst, std::uint32_t r,
                              const PruneParams& params, std::uint64_t limit) {
    check_shapes(code, inst);
    if (space.shape() != code.shape()) throw std::invalid_argument("space shape mismatch");
    const Rational radius =
        Rational(1) - (code.tau(r) + params.eta) / (Rational(1) - params.eta_prime);
    std::vector<Vec> out;
    if (!(radius > Rational(0))) return out;
    space.for_each_element(limit, [&](const Vec& v) {
        if (inst.distance_to_lists(v) < radius) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool covers_all(const RecoveryOutput& out, const std::vector<Vec>& targets, std::uint64_t limit) {
    if (targets.empty()) return true;
    if (!out.space) return false;
    std::vector<std::vector<Vec>> enumerated;
    enumerated.reserve(out.runs.size());
    for (const RunRecord& rec : out.runs)
        if (rec.sumset) enumerated.push_back(enumerate_sumset(*rec.sumset, limit));
    for (const Vec& target : targets) {
        bool hit = false;
        for (const std::vector<Vec>& members : enumerated)
            if (std::binary_search(members.begin(), members.end(), target)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

double bound_list_size(std::uint32_t r, const Rational& eta, const Rational& eta_prime,
                       std::uint32_t ell) {
    if (eta.is_zero() || eta.is_negative()) throw std::invalid_argument("eta must be positive");
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    const std::uint32_t exponent = trace_length_bound(r, eta_prime);
    const Rational tail = Rational(r) / eta + Rational(1);
    return std::pow(static_cast<double>(ell), static_cast<double>(exponent)) * tail.to_double();
}

double bound_bcz(std::uint32_t ell, const Rational& tau_r, const Rational& epsilon) {
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    if (epsilon.is_zero() || epsilon.is_negative())
        throw std::invalid_argument("epsilon must be positive");
    if (tau_r.is_negative()) throw std::invalid_argument("tau must be nonnegative");
    const Rational sum = tau_r + epsilon;
    if (sum > Rational(1)) throw std::invalid_argument("tau + epsilon must be at most 1");
    return std::pow((Rational(ell) / sum).to_double(), (sum / epsilon).to_double());
}

FrsTheoremParams frs_theorem_params(const Rational& rate, const Rational& epsilon,
                                    std::uint32_t ell) {
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    if (rate.is_zero() || rate.is_negative()) throw std::invalid_argument("rate must be positive");
    if (epsilon.is_zero() || epsilon.is_negative() || !(rate + epsilon < Rational(1)))
        throw std::invalid_argument("epsilon must lie in (0, 1 - rate)");

    FrsTheoremParams p;
    p.r = to_u32(rational_ceil(Rational(4) * Rational(ell) / epsilon), "r out of range");
    p.s0 = to_u32(rational_ceil(Rational(16) * (rate + epsilon) * Rational(ell) /
                                (epsilon * epsilon)),
                  "s0 out of range");
    p.eta = epsilon / Rational(4);
    p.eta_prime = epsilon / (Rational(2) * (rate + epsilon));
    const double coeff = (Rational(2) * (rate + epsilon) / epsilon).to_double();
    const double inner =
        std::log(2.0 * std::numbers::e * ell / (rate + epsilon).to_double());
    p.sumset_dim_bound = static_cast<std::uint32_t>(std::ceil(coeff * inner));
    p.t = derive_repetitions(p.r, p.eta, ell, 1.0);
    return p;
}

}  // namespace listrec
