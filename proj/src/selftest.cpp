#include "listrec/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "listrec/jsonio.hpp"
#include "listrec/recovery.hpp"
#include "listrec/verify.hpp"

namespace listrec {

namespace {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CriterionResult finish(const char* id, bool pass, std::string detail, const Stopwatch& sw) {
    return CriterionResult{id, pass, std::move(detail), sw.seconds()};
}

Vec random_codeword(const FrsCode& code, Rng& rng) {
    Vec msg(code.k());
    for (auto& coeff : msg) coeff = static_cast<std::uint32_t>(rng.below(code.q()));
    return code.encode(msg);
}

struct SpanDraw {
    Subspace space;
    std::vector<Vec> words;
};

/// Span of r codewords, the first optionally prescribed; rank-deficient draws
/// are rejected.
SpanDraw draw_code_span(const FrsCode& code, std::uint32_t r, Rng& rng, const Vec* first) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Vec> words;
        if (first) words.push_back(*first);
        while (words.size() < r) words.push_back(random_codeword(code, rng));
        Subspace space = Subspace::span(code.shape(), words);
        if (space.dim() == r) return {std::move(space), std::move(words)};
    }
    throw std::runtime_error("could not draw a full-rank span");
}

Symbol random_symbol(const Shape& shape, Rng& rng) {
    Symbol symbol(shape.s);
    for (auto& v : symbol) v = static_cast<std::uint32_t>(rng.below(shape.q));
    return symbol;
}

/// Lists of size ell that contain c's symbol on `agree` random coordinates
/// and junk elsewhere.
ListRecoveryInstance make_agreement_instance(const Shape& shape, const Vec& c,
                                             std::uint32_t agree, std::uint32_t ell, Rng& rng) {
    std::vector<std::uint32_t> coords(shape.n);
    std::iota(coords.begin(), coords.end(), 0u);
    for (std::uint32_t i = 0; i < agree; ++i)
        std::swap(coords[i], coords[i + rng.below(shape.n - i)]);

    std::vector<std::vector<Symbol>> lists(shape.n);
    for (std::uint32_t idx = 0; idx < shape.n; ++idx) {
        std::vector<Symbol>& list = lists[coords[idx]];
        if (idx < agree) list.push_back(symbol_at(c, shape, coords[idx]));
        while (list.size() < ell) {
            Symbol junk = random_symbol(shape, rng);
            if (std::find(list.begin(), list.end(), junk) == list.end())
                list.push_back(std::move(junk));
        }
    }
    return ListRecoveryInstance(shape, std::move(lists), ell, Rational(1));
}

Subspace draw_ambient_span(const Shape& shape, std::uint32_t d, Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Vec> vectors(d, Vec(shape.flat_len()));
        for (Vec& v : vectors)
            for (auto& entry : v) entry = static_cast<std::uint32_t>(rng.below(shape.q));
        Subspace space = Subspace::span(shape, vectors);
        if (space.dim() == d) return space;
    }
    throw std::runtime_error("could not draw a full-rank ambient span");
}

/// Coordinates whose pins take the space down to {0}; subset of a random
/// coordinate order, keeping only dimension-dropping pins.
std::vector<std::uint32_t> greedy_pin_set(const Subspace& space, Rng& rng) {
    std::vector<std::uint32_t> order(space.shape().n);
    std::iota(order.begin(), order.end(), 0u);
    for (std::uint32_t i = 0; i + 1 < order.size(); ++i)
        std::swap(order[i], order[i + rng.below(order.size() - i)]);

    Subspace current = space;
    std::vector<std::uint32_t> pins;
    for (std::uint32_t t : order) {
        if (current.dim() == 0) break;
        Subspace next = current.coordinate_zero(t);
        if (next.dim() < current.dim()) {
            pins.push_back(t);
            current = std::move(next);
        }
    }
    std::sort(pins.begin(), pins.end());
    return pins;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TraceBatch {
    std::uint32_t r = 0;
    Rational eta_prime;
    std::vector<std::size_t> lengths;  // non-failed agreement-set sizes
};

CriterionResult criterion_design(std::uint64_t) {
    Stopwatch sw;
    const FrsCode code(37, 8, 4, 4);
    const DesignReport report = verify_design_exhaustive(code, 1);
    const bool pass = report.pass() && report.subspaces_checked == 52060;
    std::ostringstream detail;
    detail << report.subspaces_checked << " subspaces, max statistic "
           << report.max_statistic.to_string() << " vs bound " << report.bound.to_string();
    return finish("design-exhaustive", pass, detail.str(), sw);
}

CriterionResult criterion_monotonicity(std::uint64_t seed) {
    Stopwatch sw;
    const FrsCode code(37, 8, 4, 4);
    const PruneParams params(ratio(1, 8), ratio(1, 8));
    const MonotonicityReport report = audit_monotonicity(code, 4, 2, 100, params, seed);
    const bool pass = report.pass() && report.checked == 100 && report.hypothesis_skipped == 0;
    std::ostringstream detail;
    detail << report.checked << " instances checked exactly, " << report.counterexamples.size()
           << " counterexamples";
    return finish("potential-monotonicity", pass, detail.str(), sw);
}

CriterionResult criterion_fprune_floor(std::uint64_t seed, TraceBatch& batch) {
    Stopwatch sw;
    const FrsCode code(37, 8, 4, 4);
    const PruneParams params(ratio(1, 4), ratio(1, 8));
    Rng setup = Rng::stream(seed, 1001);
    const SpanDraw draw = draw_code_span(code, 3, setup, nullptr);
    const Vec& c = draw.words.front();
    const ListRecoveryInstance inst = make_agreement_instance(code.shape(), c, 5, 2, setup);

    const std::uint64_t est_seed = Rng::stream(seed, 1002).next();
    const std::uint64_t trials = 10000;
    const EstimatorReport report =
        estimate_fprune_success(code, draw.space, c, inst, params, trials, est_seed);

    batch.r = 3;
    batch.eta_prime = params.eta_prime;
    for (std::uint64_t j = 1; j <= trials; ++j) {
        Rng rng = Rng::stream(est_seed, j);
        const PruneTrace trace = fprune(draw.space, params, rng);
        if (!trace.failed) batch.lengths.push_back(trace.pinned.size());
    }

    const bool pass = report.hypothesis_met && report.pass().value_or(false);
    std::ostringstream detail;
    detail << "mean statistic " << report.estimate.to_double() << " vs floor "
           << report.floor.to_string() << " - " << report.z_margin << " over " << trials
           << " runs";
    return finish("fprune-floor", pass, detail.str(), sw);
}

struct BoundCheckOutcome {
    bool list_size_ok = true;
    bool bcz_ok = true;
    bool bcz_leq_ours_somewhere = false;
    std::uint64_t instances = 0;
    std::uint64_t max_exact = 0;
    double min_bound = 0;
};

BoundCheckOutcome run_bound_checks(std::uint64_t seed) {
    const Rational eta = ratio(1, 8);
    const Rational eta_prime = ratio(1, 8);
    const std::uint32_t ell = 2;
    const std::vector<std::pair<FrsCode, std::uint32_t>> configs = {
        {FrsCode(13, 3, 2, 2), 2},
        {FrsCode(13, 4, 4, 3), 2},
        {FrsCode(17, 5, 3, 3), 3},
        {FrsCode(37, 8, 3, 4), 3},
    };

    BoundCheckOutcome out;
    out.min_bound = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < 60; ++i) {
        Rng rng = Rng::stream(seed, 2000 + i);
        const auto& [code, max_r] = configs[i % configs.size()];
        const auto r = 1 + static_cast<std::uint32_t>(rng.below(max_r));
        const Rational tau = code.tau(r);
        const Rational radius = Rational(1) - (tau + eta) / (Rational(1) - eta_prime);

        // Planted noise: the largest multiple of 1/n strictly inside the
        // radius, which makes distance <= delta the same set as distance <
        // radius.
        BigInt steps = rational_ceil(radius * Rational(code.n())) - 1;
        if (steps < 0) steps = 0;
        const Rational noise(steps, BigInt(code.n()));

        std::uint64_t count = 0;
        for (int attempt = 0;; ++attempt) {
            Rng draw_rng = Rng::stream(rng.next(), attempt);
            const PlantedInstance planted = make_planted_instance(code, 1, ell, noise, draw_rng);
            try {
                const SpanDraw draw =
                    draw_code_span(code, r, draw_rng, &planted.planted.front());
                count = 0;
                for (const Vec& c : exact_list(code, planted.instance))
                    if (draw.space.member(c)) ++count;
                break;
            } catch (const std::runtime_error&) {
                if (attempt >= 20) throw;
            }
        }

        const double ours = bound_list_size(r, eta, eta_prime, ell);
        const Rational eps_bcz = (tau + eta) / (Rational(1) - eta_prime) - tau;
        const double bcz = bound_bcz(ell, tau, eps_bcz);
        out.list_size_ok &= static_cast<double>(count) <= ours;
        out.bcz_ok &= static_cast<double>(count) <= bcz;
        out.bcz_leq_ours_somewhere |= bcz <= ours;
        out.max_exact = std::max(out.max_exact, count);
        out.min_bound = std::min({out.min_bound, ours, bcz});
        ++out.instances;
    }
    return out;
}

CriterionResult criterion_list_size(const BoundCheckOutcome& out, double elapsed) {
    std::ostringstream detail;
    detail << out.instances << " instances, max exact count " << out.max_exact
           << ", smallest bound " << out.min_bound;
    return CriterionResult{"list-size-bound", out.list_size_ok, detail.str(), elapsed};
}

CriterionResult criterion_bcz(const BoundCheckOutcome& out, double elapsed) {
    std::ostringstream detail;
    detail << out.instances << " instances within the bcz bound, bcz <= list-size bound "
           << (out.bcz_leq_ours_somewhere ? "observed" : "never observed");
    return CriterionResult{"bcz-consistency", out.bcz_ok && out.bcz_leq_ours_somewhere,
                           detail.str(), elapsed};
}

CriterionResult criterion_reduce_containment(std::uint64_t seed) {
    Stopwatch sw;
    const std::vector<Shape> shapes = {Shape{4, 3, 13}, Shape{6, 2, 13}, Shape{5, 2, 11}};
    bool pass = true;
    std::uint64_t nonempty_agreements = 0;
    for (std::uint32_t i = 0; i < 100 && pass; ++i) {
        Rng rng = Rng::stream(seed, 3000 + i);
        const Shape shape = shapes[i % shapes.size()];
        const auto d = 1 + static_cast<std::uint32_t>(rng.below(4));
        const Subspace space = draw_ambient_span(shape, d, rng);
        const std::vector<std::uint32_t> pins = greedy_pin_set(space, rng);

        const auto ell = 1 + static_cast<std::uint32_t>(rng.below(3));
        std::vector<std::vector<Symbol>> lists(shape.n);
        for (std::uint32_t t = 0; t < shape.n; ++t) {
            if (rng.below(4) < 3) {
                Vec member(shape.flat_len(), 0);
                for (const Vec& row : space.basis()) {
                    const auto coeff = static_cast<std::uint32_t>(rng.below(shape.q));
                    for (std::uint32_t pos = 0; pos < shape.flat_len(); ++pos)
                        member[pos] = addm(member[pos], mulm(coeff, row[pos], shape.q), shape.q);
                }
                lists[t].push_back(symbol_at(member, shape, t));
            }
            while (lists[t].size() < ell) {
                Symbol junk = random_symbol(shape, rng);
                if (std::find(lists[t].begin(), lists[t].end(), junk) == lists[t].end())
                    lists[t].push_back(std::move(junk));
            }
        }
        const ListRecoveryInstance inst(shape, std::move(lists), ell, Rational(0));

        const ReduceResult red = reduce_certified(space, pins, inst);
        pass &= red.sumset.summands.size() <= pins.size();
        for (const auto& summand : red.sumset.summands) pass &= summand.size() <= ell;

        const std::vector<Vec> represented = enumerate_sumset(red.sumset);
        bool any = false;
        space.for_each_element(enumeration_limit(), [&](const Vec& v) {
            bool agrees = true;
            for (std::uint32_t t : pins)
                agrees = agrees && inst.contains(t, symbol_at(v, shape, t));
            if (!agrees) return;
            any = true;
            pass &= std::binary_search(represented.begin(), represented.end(), v);
        });
        nonempty_agreements += any;
    }
    std::ostringstream detail;
    detail << "100 instances, " << nonempty_agreements
           << " with nonempty agreement sets, containment and size bounds held";
    return finish("reduce-containment", pass, detail.str(), sw);
}

CriterionResult criterion_coverage(std::uint64_t seed, TraceBatch& batch) {
    Stopwatch sw;
    const FrsCode code(37, 8, 3, 4);
    const PruneParams params(ratio(1, 4), ratio(1, 8));
    const std::uint32_t runs = 200;

    batch.r = 3;
    batch.eta_prime = params.eta_prime;

    std::uint32_t covered1 = 0;
    std::uint32_t covered3 = 0;
    std::uint32_t t1 = 0, t3 = 0;
    for (std::uint32_t i = 0; i < runs; ++i) {
        Rng rng = Rng::stream(seed, 4000 + i);
        const PlantedInstance planted = make_planted_instance(code, 2, 2, ratio(3, 8), rng);

        RecoveryConfig cfg;
        cfg.r = 3;
        cfg.eta = params.eta;
        cfg.eta_prime = params.eta_prime;
        cfg.seed = rng.next();
        cfg.step1_mode = Step1Mode::whole_code;

        cfg.t_prime = 1.0;
        const RecoveryOutput out1 = recover(code, planted.instance, cfg);
        cfg.t_prime = 3.0;
        const RecoveryOutput out3 = recover(code, planted.instance, cfg);
        t1 = out1.config.t;
        t3 = out3.config.t;

        const std::vector<Vec> list =
            theorem_list(code, *out1.space, planted.instance, 3, params);
        covered1 += covers_all(out1, list);
        covered3 += covers_all(out3, list);

        for (const RecoveryOutput* out : {&out1, &out3})
            for (const RunRecord& rec : out->runs)
                if (!rec.trace.failed) batch.lengths.push_back(rec.trace.pinned.size());
    }

    const double floor1 = 0.632, floor3 = 0.950;
    const double margin1 = 3.0 * std::sqrt(floor1 * (1 - floor1) / runs);
    const double margin3 = 3.0 * std::sqrt(floor3 * (1 - floor3) / runs);
    const double rate1 = static_cast<double>(covered1) / runs;
    const double rate3 = static_cast<double>(covered3) / runs;
    const bool pass = rate1 >= floor1 - margin1 && rate3 >= floor3 - margin3;
    std::ostringstream detail;
    detail << "coverage " << rate1 << " (t=" << t1 << ", floor " << floor1 << "-" << margin1
           << "), " << rate3 << " (t=" << t3 << ", floor " << floor3 << "-" << margin3 << ")";
    return finish("coverage", pass, detail.str(), sw);
}

CriterionResult criterion_ahs_vs_uniform(std::uint64_t seed) {
    Stopwatch sw;
    const FrsCode code(37, 8, 4, 4);
    const Shape shape = code.shape();
    Rng setup = Rng::stream(seed, 6000);
    const SpanDraw draw = draw_code_span(code, 3, setup, nullptr);
    const Vec& c = draw.words.front();

    // Received word: c with three corrupted coordinates.
    Vec y = c;
    std::vector<std::uint32_t> coords(shape.n);
    std::iota(coords.begin(), coords.end(), 0u);
    for (std::uint32_t i = 0; i < 3; ++i) {
        std::swap(coords[i], coords[i + setup.below(shape.n - i)]);
        const std::uint32_t t = coords[i];
        while (true) {
            const Symbol junk = random_symbol(shape, setup);
            if (junk == symbol_at(c, shape, t)) continue;
            for (std::uint32_t row = 0; row < shape.s; ++row)
                y[std::size_t{t} * shape.s + row] = junk[row];
            break;
        }
    }

    const AffineSpace space(Vec(shape.flat_len(), 0), draw.space);
    const Rational eps = ratio(1, 4);
    const std::uint64_t trials = 4000;
    const EstimatorReport ahs =
        estimate_ahs_success(code, space, y, c, eps, trials, Rng::stream(seed, 6001).next());
    const EstimatorReport uni =
        estimate_uniform_success(code, space, y, c, eps, trials, Rng::stream(seed, 6002).next());

    const bool pass = ahs.hypothesis_met && uni.hypothesis_met && ahs.pass().value_or(false) &&
                      uni.pass().value_or(false) && ahs.estimate > uni.estimate;
    std::ostringstream detail;
    detail << "ahs " << ahs.estimate.to_double() << " (floor " << ahs.floor.to_string()
           << ") vs uniform " << uni.estimate.to_double() << " (floor " << uni.floor.to_string()
           << ")";
    return finish("ahs-vs-uniform", pass, detail.str(), sw);
}

CriterionResult criterion_trace_length(const std::vector<TraceBatch>& batches, double elapsed) {
    bool pass = true;
    std::size_t total = 0, max_len = 0;
    std::uint32_t bound_shown = 0;
    for (const TraceBatch& batch : batches) {
        const std::uint32_t bound =
            std::min(batch.r, trace_length_bound(batch.r, batch.eta_prime));
        bound_shown = bound;
        for (std::size_t len : batch.lengths) {
            pass &= len <= bound;
            max_len = std::max(max_len, len);
        }
        total += batch.lengths.size();
    }
    std::ostringstream detail;
    detail << total << " traces, longest " << max_len << ", bound " << bound_shown;
    return CriterionResult{"trace-length", pass && total > 0, detail.str(), elapsed};
}

CriterionResult criterion_determinism(const std::string& cli_path) {
    Stopwatch sw;
    bool pass = false;
    std::string detail;
    if (!cli_path.empty()) {
        const auto tag = std::to_string(
            std::chrono::steady_clock::now().time_since_epoch().count());
        const auto dir = std::filesystem::temp_directory_path();
        const auto out_a = dir / ("listrec-accept-" + tag + "-a.json");
        const auto out_b = dir / ("listrec-accept-" + tag + "-b.json");
        const std::string args =
            " recover --q 13 --n 3 --k 2 --s 2 --planted 1 --noise 1/3 --ell 2"
            " --r 2 --eta 1/8 --eta-prime 1/8 --t 20 --seed 99 --out ";
        const int rc_a = std::system(("\"" + cli_path + "\"" + args + out_a.string()).c_str());
        const int rc_b = std::system(("\"" + cli_path + "\"" + args + out_b.string()).c_str());
        const std::string bytes_a = read_bytes(out_a);
        const std::string bytes_b = read_bytes(out_b);
        pass = rc_a == 0 && rc_b == 0 && !bytes_a.empty() && bytes_a == bytes_b;
        detail = "two cli runs, " + std::to_string(bytes_a.size()) + " bytes, " +
                 (pass ? "identical" : "mismatch");
        std::error_code ec;
        std::filesystem::remove(out_a, ec);
        std::filesystem::remove(out_b, ec);
    } else {
        const FrsCode code(13, 3, 2, 2);
        Rng rng_a = Rng::stream(77, 1);
        Rng rng_b = Rng::stream(77, 1);
        const PlantedInstance inst_a = make_planted_instance(code, 1, 2, ratio(1, 3), rng_a);
        const PlantedInstance inst_b = make_planted_instance(code, 1, 2, ratio(1, 3), rng_b);
        RecoveryConfig cfg;
        cfg.r = 2;
        cfg.eta = ratio(1, 4);
        cfg.eta_prime = ratio(1, 8);
        cfg.t = 20;
        cfg.seed = 99;
        const RecoveryOutput out_a = recover(code, inst_a.instance, cfg);
        const RecoveryOutput out_b = recover(code, inst_b.instance, cfg);
        const std::string dump_a =
            recovery_report(code, inst_a.instance, out_a, inst_a.planted,
                            covers_all(out_a, inst_a.planted))
                .dump(2);
        const std::string dump_b =
            recovery_report(code, inst_b.instance, out_b, inst_b.planted,
                            covers_all(out_b, inst_b.planted))
                .dump(2);
        pass = dump_a == dump_b;
        detail = "in-process reports, " + std::to_string(dump_a.size()) + " bytes, " +
                 (pass ? "identical" : "mismatch");
    }
    return finish("determinism", pass, detail, sw);
}

}  // namespace

const std::vector<std::string>& selftest_ids() {
    static const std::vector<std::string> ids = {
        "design-exhaustive", "potential-monotonicity", "fprune-floor",    "list-size-bound",
        "reduce-containment", "coverage",              "ahs-vs-uniform",  "bcz-consistency",
        "trace-length",       "determinism",
    };
    return ids;
}

std::vector<CriterionResult> run_selftest(const std::string& cli_path, std::uint64_t seed) {
    std::vector<TraceBatch> batches(2);

    const CriterionResult design = criterion_design(seed);
    const CriterionResult monotonic = criterion_monotonicity(seed);
    const CriterionResult fprune_floor = criterion_fprune_floor(seed, batches[0]);

    Stopwatch bounds_sw;
    const BoundCheckOutcome bound_checks = run_bound_checks(seed);
    const double bounds_elapsed = bounds_sw.seconds();

    const CriterionResult reduce_containment = criterion_reduce_containment(seed);
    const CriterionResult coverage = criterion_coverage(seed, batches[1]);
    const CriterionResult ahs_uniform = criterion_ahs_vs_uniform(seed);

    return {
        design,
        monotonic,
        fprune_floor,
        criterion_list_size(bound_checks, bounds_elapsed),
        reduce_containment,
        coverage,
        ahs_uniform,
        criterion_bcz(bound_checks, bounds_elapsed),
        criterion_trace_length(batches, 0.0),
        criterion_determinism(cli_path),
    };
}

}  // namespace listrec
