#include "listrec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "listrec/recovery.hpp"

namespace listrec {

namespace {

constexpr std::size_t kMaxStoredViolations = 32;

BigInt gaussian_binomial(std::uint32_t k, std::uint32_t r, std::uint32_t q) {
    BigInt num = 1, den = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        num *= boost::multiprecision::pow(BigInt(q), k - i) - 1;
        den *= boost::multiprecision::pow(BigInt(q), i + 1) - 1;
    }
    return num / den;  // exact, the binomial is an integer
}

void check_statistic(const Subspace& h, const Rational& bound, DesignReport& report) {
    const Rational stat = design_statistic(h);
    if (stat > report.max_statistic) report.max_statistic = stat;
    if (stat > bound) {
        ++report.violation_count;
        if (report.violations.size() < kMaxStoredViolations) report.violations.push_back(h);
    }
    ++report.subspaces_checked;
}

Vec random_message(const FrsCode& code, Rng& rng) {
    Vec msg(code.k());
    for (auto& coeff : msg) coeff = static_cast<std::uint32_t>(rng.below(code.q()));
    return msg;
}

Subspace sample_code_subspace(const FrsCode& code, std::uint32_t d, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Vec> words;
        words.reserve(d);
        for (std::uint32_t i = 0; i < d; ++i) words.push_back(code.encode(random_message(code, rng)));
        Subspace h = Subspace::span(code.shape(), words);
        if (h.dim() == d) return h;
    }
    throw std::runtime_error("could not sample a full-rank subspace");
}

void require_code_subspace(const FrsCode& code, const std::vector<Vec>& basis) {
    const Subspace cs = code.code_space();
    for (const Vec& row : basis)
        if (!cs.member(row)) throw std::invalid_argument("space is not spanned by codewords");
}

double binomial_margin(const Rational& estimate, std::uint64_t trials) {
    const double p = estimate.to_double();
    const double var = std::max(0.0, p * (1.0 - p));
    return 3.0 * std::sqrt(var / static_cast<double>(trials));
}

}  // namespace

DesignReport verify_design_exhaustive(const FrsCode& code, std::uint32_t r,
                                      const Rational& tau_scale, std::uint64_t limit) {
    if (r < 1 || r > code.k()) throw std::invalid_argument("r must lie in [1, k]");
    if (gaussian_binomial(code.k(), r, code.q()) > limit)
        throw std::length_error("subspace count exceeds limit");

    DesignReport report;
    report.r = r;
    report.bound = Rational(r) * code.tau(r) * tau_scale;

    // Dim-r subspaces of the code correspond one-to-one to reduced echelon
    // r x k coefficient matrices over the message space.
    const std::uint32_t k = code.k();
    const std::uint32_t q = code.q();
    std::vector<std::uint32_t> pivots(r);
    for (std::uint32_t i = 0; i < r; ++i) pivots[i] = i;
    while (true) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_cells;
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t j = pivots[i] + 1; j < k; ++j)
                if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                    free_cells.emplace_back(i, j);

        std::vector<Vec> rows(r, Vec(k, 0));
        for (std::uint32_t i = 0; i < r; ++i) rows[i][pivots[i]] = 1;
        std::vector<std::uint32_t> digits(free_cells.size(), 0);
        while (true) {
            std::vector<Vec> words;
            words.reserve(r);
            for (const Vec& msg : rows) words.push_back(code.encode(msg));
            check_statistic(Subspace::span(code.shape(), words), report.bound, report);

            std::size_t pos = free_cells.size();
            while (pos > 0) {
                auto [i, j] = free_cells[pos - 1];
                if (++digits[pos - 1] < q) {
                    rows[i][j] = digits[pos - 1];
                    break;
                }
                digits[pos - 1] = 0;
                rows[i][j] = 0;
                --pos;
            }
            if (pos == 0) break;
        }

        // Next pivot-column combination in lexicographic order.
        std::uint32_t i = r;
        while (i > 0 && pivots[i - 1] == k - r + (i - 1)) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::uint32_t j = i; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return report;
}

DesignReport verify_design_sampled(const FrsCode& code, std::uint32_t r, std::uint64_t samples,
                                   std::uint64_t seed, const Rational& tau_scale) {
    if (r < 1 || r > code.k()) throw std::invalid_argument("r must lie in [1, k]");
    if (samples < 1) throw std::invalid_argument("samples must be positive");

    DesignReport report;
    report.r = r;
    report.bound = Rational(r) * code.tau(r) * tau_scale;
    Rng rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i)
        check_statistic(sample_code_subspace(code, r, rng), report.bound, report);
    return report;
}

std::optional<bool> EstimatorReport::pass() const {
    if (!hypothesis_met) return std::nullopt;
    return estimate.to_double() >= floor.to_double() - z_margin;
}

EstimatorReport estimate_fprune_success(const FrsCode& code, const Subspace& space, const Vec& c,
                                        const ListRecoveryInstance& lists,
                                        const PruneParams& params, std::uint64_t trials,
                                        std::uint64_t seed) {
    if (space.shape() != code.shape() || lists.shape() != code.shape())
        throw std::invalid_argument("shape mismatch");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (space.dim() < 1) throw std::invalid_argument("space must have positive dimension");
    if (!space.member(c)) throw std::invalid_argument("planted vector must lie in the space");
    require_code_subspace(code, space.basis());

    const std::uint32_t dim = space.dim();
    EstimatorReport report;
    report.trials = trials;
    report.floor = params.eta / (Rational(dim) + params.eta);
    report.hypothesis_met =
        lists.distance_to_lists(c) <
        Rational(1) - (code.tau(dim) + params.eta) / (Rational(1) - params.eta_prime);

    const Rational retain = Rational(1) - params.eta_prime;
    Rational sum(0);
    for (std::uint64_t j = 1; j <= trials; ++j) {
        Rng rng = Rng::stream(seed, j);
        const PruneTrace trace = fprune(space, params, rng);
        bool agrees = !trace.failed;
        for (std::uint32_t i : trace.pinned) {
            if (!agrees) break;
            agrees = lists.contains(i, symbol_at(c, code.shape(), i));
        }
        if (agrees) {
            ++report.successes;
            sum = sum + retain.pow(static_cast<unsigned>(trace.pinned.size()));
        }
    }
    report.estimate = sum / Rational(BigInt(trials), BigInt(1));
    report.z_margin = binomial_margin(report.estimate, trials);
    return report;
}

namespace {

EstimatorReport estimate_received_word(const FrsCode& code, const AffineSpace& space, const Vec& y,
                                       const Vec& c, const Rational& epsilon, std::uint64_t trials,
                                       std::uint64_t seed, bool uniform) {
    if (space.shape() != code.shape()) throw std::invalid_argument("shape mismatch");
    if (y.size() != code.shape().flat_len()) throw std::invalid_argument("received word length");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (space.dim() < 1) throw std::invalid_argument("space must have positive dimension");
    if (!space.member(c)) throw std::invalid_argument("planted vector must lie in the space");
    require_code_subspace(code, space.direction().basis());

    const std::uint32_t dim = space.dim();
    EstimatorReport report;
    report.trials = trials;
    if (uniform) {
        report.floor = epsilon.pow(dim);
        report.hypothesis_met =
            hamming_distance(code.shape(), c, y) < code.relative_distance() - epsilon;
    } else {
        report.floor = epsilon / (Rational(dim) + epsilon);
        report.hypothesis_met =
            hamming_distance(code.shape(), c, y) < Rational(1) - code.tau(dim) - epsilon;
    }

    for (std::uint64_t j = 1; j <= trials; ++j) {
        Rng rng = Rng::stream(seed, j);
        const std::optional<Vec> got =
            uniform ? prune_uniform(space, y, rng) : prune_ahs(space, y, epsilon, rng);
        if (got && *got == c) ++report.successes;
    }
    report.estimate = Rational(BigInt(report.successes), BigInt(1)) /
                      Rational(BigInt(trials), BigInt(1));
    report.z_margin = binomial_margin(report.estimate, trials);
    return report;
}

}  // namespace

EstimatorReport estimate_ahs_success(const FrsCode& code, const AffineSpace& space, const Vec& y,
                                     const Vec& c, const Rational& epsilon, std::uint64_t trials,
                                     std::uint64_t seed) {
    return estimate_received_word(code, space, y, c, epsilon, trials, seed, false);
}

EstimatorReport estimate_uniform_success(const FrsCode& code, const AffineSpace& space,
                                         const Vec& y, const Vec& c, const Rational& epsilon,
                                         std::uint64_t trials, std::uint64_t seed) {
    return estimate_received_word(code, space, y, c, epsilon, trials, seed, true);
}

MonotonicityReport audit_monotonicity(const FrsCode& code, std::uint32_t max_dim,
                                      std::uint32_t ell, std::uint32_t count,
                                      const PruneParams& params, std::uint64_t seed) {
    if (max_dim < 1 || max_dim > code.k()) throw std::invalid_argument("max_dim must lie in [1, k]");
    if (ell < 1) throw std::invalid_argument("ell must be positive");
    if (count < 1) throw std::invalid_argument("count must be positive");

    const Shape shape = code.shape();
    MonotonicityReport report;
    Rng rng(seed);
    for (std::uint32_t trial = 0; trial < count; ++trial) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(max_dim));
        const Rational threshold =
            (code.tau(d) + params.eta) / (Rational(1) - params.eta_prime);
        if (!(threshold < Rational(1))) {
            ++report.hypothesis_skipped;
            continue;
        }
        const Subspace h = sample_code_subspace(code, d, rng);

        Vec c(shape.flat_len(), 0);
        for (const Vec& row : h.basis()) {
            const auto coeff = static_cast<std::uint32_t>(rng.below(shape.q));
            for (std::uint32_t pos = 0; pos < shape.flat_len(); ++pos)
                c[pos] = addm(c[pos], mulm(coeff, row[pos], shape.q), shape.q);
        }

        // Enough agreeing coordinates to put c strictly inside the radius.
        const auto agree =
            static_cast<std::uint32_t>(rational_floor(threshold * Rational(shape.n))) + 1;
        std::vector<std::uint32_t> coords(shape.n);
        for (std::uint32_t i = 0; i < shape.n; ++i) coords[i] = i;
        for (std::uint32_t i = 0; i < agree; ++i)
            std::swap(coords[i], coords[i + rng.below(shape.n - i)]);

        std::vector<std::vector<Symbol>> lists(shape.n);
        for (std::uint32_t idx = 0; idx < shape.n; ++idx) {
            const std::uint32_t i = coords[idx];
            std::vector<Symbol>& list = lists[i];
            if (idx < agree) list.push_back(symbol_at(c, shape, i));
            while (list.size() < ell) {
                Symbol junk(shape.s);
                for (auto& v : junk) v = static_cast<std::uint32_t>(rng.below(shape.q));
                if (std::find(list.begin(), list.end(), junk) == list.end())
                    list.push_back(std::move(junk));
            }
        }
        const ListRecoveryInstance inst(shape, std::move(lists), ell, Rational(1));

        if (!(inst.distance_to_lists(c) < Rational(1) - threshold)) {
            ++report.hypothesis_skipped;
            continue;
        }
        const Rational before = potential(h, c, {}, inst, params);
        const Rational after = expected_potential_step(h, c, {}, inst, params);
        ++report.checked;
        if (after < before) report.counterexamples.push_back({h, c, inst, before, after});
    }
    return report;
}

std::vector<BoundsRow> bounds_table(const FrsCode& code, std::uint32_t r, std::uint32_t ell,
                                    const std::vector<Rational>& epsilon_grid,
                                    std::uint32_t instances_per_row, std::uint64_t seed,
                                    std::uint64_t limit) {
    // The whole code stands in for the ambient space, so its dimension k must
    // fit under the budget r.
    if (r < code.k()) throw std::invalid_argument("r must be at least k");
    if (ell < 1) throw std::invalid_argument("ell must be positive");
    if (instances_per_row < 1) throw std::invalid_argument("instances_per_row must be positive");

    const Rational tau = code.tau(r);
    std::vector<BoundsRow> table;
    table.reserve(epsilon_grid.size());
    for (std::size_t gi = 0; gi < epsilon_grid.size(); ++gi) {
        const Rational& eps = epsilon_grid[gi];
        if (eps.is_zero() || eps.is_negative())
            throw std::invalid_argument("epsilon must be positive");

        BoundsRow row;
        row.epsilon = eps;
        row.radius = Rational(1) - tau - eps;
        const Rational eta = eps / Rational(2);
        const Rational eta_prime = eps / (Rational(2) * (tau + eps));
        row.ours = bound_list_size(r, eta, eta_prime, ell);
        row.bcz = bound_bcz(ell, tau, eps);

        // Largest multiple of 1/n strictly below the radius, as planted noise.
        BigInt steps = rational_ceil(row.radius * Rational(code.n())) - 1;
        if (steps < 0) steps = 0;
        const Rational noise(steps, BigInt(code.n()));
        const std::uint32_t plants = std::min<std::uint32_t>(ell, 2);
        for (std::uint32_t ii = 0; ii < instances_per_row; ++ii) {
            Rng rng = Rng::stream(seed, gi * instances_per_row + ii + 1);
            const PlantedInstance planted =
                make_planted_instance(code, plants, ell, noise, rng);
            std::uint64_t count = 0;
            code.for_each_codeword(limit, [&](const Vec& c) {
                if (planted.instance.distance_to_lists(c) < row.radius) ++count;
            });
            row.exact_max = std::max(row.exact_max, count);
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace listrec
