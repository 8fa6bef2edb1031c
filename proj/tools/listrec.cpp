#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "listrec/jsonio.hpp"
#include "listrec/recovery.hpp"
#include "listrec/selftest.hpp"
#include "listrec/verify.hpp"

namespace {

using namespace listrec;

constexpr int kOk = 0;
constexpr int kFailedCheck = 1;
constexpr int kConfigError = 2;
constexpr int kInfeasible = 3;

struct CodeOpts {
    std::uint32_t q = 0, n = 0, k = 0, s = 0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--q", q, "field size, a prime above s*n")->required();
        cmd.add_option("--n", n, "block length")->required();
        cmd.add_option("--k", k, "message length")->required();
        cmd.add_option("--s", s, "folding order")->required();
    }
    FrsCode build() const { return FrsCode(q, n, k, s); }
};

std::string trim_number(double value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("could not write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Report sink shared by every subcommand: stdout by default, write-then-rename
/// when --out is given.
void emit(const std::string& out_path, const std::string& format, const Json& j,
          const std::string& table) {
    if (out_path.empty()) {
        std::cout << (format == "json" ? j.dump(2) + "\n" : table);
    } else if (format == "json") {
        write_json_file(out_path, j);
    } else {
        write_text_file(out_path, table);
    }
}

Vec random_codeword(const FrsCode& code, Rng& rng) {
    Vec msg(code.k());
    for (auto& coeff : msg) coeff = static_cast<std::uint32_t>(rng.below(code.q()));
    return code.encode(msg);
}

/// Rank-r span of codewords containing `first`.
Subspace span_around(const FrsCode& code, const Vec& first, std::uint32_t r, Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Vec> words{first};
        while (words.size() < r) words.push_back(random_codeword(code, rng));
        Subspace space = Subspace::span(code.shape(), words);
        if (space.dim() == r) return space;
    }
    throw std::invalid_argument("could not extend the planted codeword to a rank-r span");
}

struct EncodeOpts {
    CodeOpts code;
    std::string message_path;
    std::string out;
    std::string format = "json";
};

int cmd_encode(const EncodeOpts& o) {
    const FrsCode code = o.code.build();
    const Json mj = read_json_file(o.message_path);
    if (!mj.is_array() || mj.size() != code.k())
        throw std::invalid_argument("message must be a JSON array of k = " +
                                    std::to_string(code.k()) + " residues");
    Vec msg;
    for (const Json& entry : mj) {
        if (!entry.is_number_unsigned() || entry.get<std::uint64_t>() >= code.q())
            throw std::invalid_argument("message entries must be residues in [0, q)");
        msg.push_back(entry.get<std::uint32_t>());
    }
    const Vec word = code.encode(msg);

    Json j;
    j["code"] = code_to_json(code);
    j["message"] = mj;
    j["codeword"] = codeword_to_json(code.shape(), word);

    std::vector<std::vector<std::string>> rows{{"coordinate", "symbol"}};
    for (std::uint32_t i = 0; i < code.n(); ++i) {
        std::string sym;
        for (std::uint32_t row = 0; row < code.s(); ++row)
            sym += (row ? "," : "") + std::to_string(word[std::size_t{i} * code.s() + row]);
        rows.push_back({std::to_string(i + 1), "(" + sym + ")"});
    }
    emit(o.out, o.format, j, render_table(rows));
    return kOk;
}

struct RecoverOpts {
    CodeOpts code;
    std::string instance_path;
    std::uint32_t planted = 1;
    std::string noise = "0";
    std::uint32_t ell = 2;
    std::string epsilon;
    std::uint32_t r = 0;
    std::string eta = "1/4";
    std::string eta_prime = "1/4";
    std::uint32_t t = 0;
    double t_prime = 1.0;
    std::uint64_t seed = 0;
    std::string mode = "whole-code";
    bool exact_filter = false;
    std::string out;
    std::string format = "json";
};

int cmd_recover(const RecoverOpts& o) {
    const FrsCode code = o.code.build();

    std::optional<ListRecoveryInstance> inst;
    std::optional<std::vector<Vec>> planted_words;
    if (!o.instance_path.empty()) {
        inst = instance_from_json(read_json_file(o.instance_path));
        if (!(inst->shape() == code.shape()))
            throw std::invalid_argument("instance shape differs from the code parameters");
    } else {
        Rng gen = Rng::stream(o.seed, 0);
        PlantedInstance p =
            make_planted_instance(code, o.planted, o.ell, Rational::parse(o.noise), gen);
        planted_words = std::move(p.planted);
        inst = std::move(p.instance);
    }

    RecoveryConfig cfg;
    if (!o.epsilon.empty()) {
        const FrsTheoremParams params =
            frs_theorem_params(code.rate(), Rational::parse(o.epsilon), inst->ell());
        cfg.r = params.r;
        cfg.eta = params.eta;
        cfg.eta_prime = params.eta_prime;
        cfg.t = params.t;
        if (code.s() < params.s0)
            std::cerr << "warning: folding order s = " << code.s()
                      << " is below the guarantee threshold s0 = " << params.s0
                      << "; the derived parameters carry no list-size promise here\n";
    } else {
        cfg.r = o.r;
        cfg.eta = Rational::parse(o.eta);
        cfg.eta_prime = Rational::parse(o.eta_prime);
        cfg.t = o.t;
        cfg.t_prime = o.t_prime;
    }
    cfg.seed = o.seed;
    cfg.exact_filter = o.exact_filter;
    cfg.step1_mode = o.mode == "oracle-hull" ? Step1Mode::oracle_hull : Step1Mode::whole_code;

    RecoveryOutput result;
    try {
        result = recover(code, *inst, cfg);
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what()
                  << "\nstep 1 is infeasible at this size; use --mode whole-code or raise "
                     "LISTREC_ENUM_LIMIT\n";
        return kInfeasible;
    }

    const Rational radius = Rational(1) - (code.tau(result.config.r) + result.config.eta) /
                                              (Rational(1) - result.config.eta_prime);
    if (radius.is_negative() || radius.is_zero())
        std::cerr << "warning: decoding radius " << radius.to_string()
                  << " is not positive; the success floor is vacuous at these parameters\n";

    std::optional<bool> covered;
    if (planted_words) {
        try {
            covered = covers_all(result, *planted_words);
        } catch (const std::length_error&) {
            covered = std::nullopt;
        }
    }

    const Json j = recovery_report(code, *inst, result, planted_words, covered);

    std::uint64_t failed = 0;
    std::size_t max_summands = 0;
    for (const RunRecord& rec : result.runs) {
        failed += rec.trace.failed;
        if (rec.sumset) max_summands = std::max(max_summands, rec.sumset->summands.size());
    }
    std::vector<std::vector<std::string>> rows{
        {"step1 dim", result.space ? std::to_string(result.space->dim()) : "empty"},
        {"r", std::to_string(result.config.r)},
        {"eta", result.config.eta.to_string()},
        {"eta'", result.config.eta_prime.to_string()},
        {"runs", std::to_string(result.runs.size())},
        {"failed runs", std::to_string(failed)},
        {"max summands", std::to_string(max_summands)},
        {"radius", radius.to_string()},
    };
    if (covered) rows.push_back({"planted covered", *covered ? "yes" : "no"});
    emit(o.out, o.format, j, render_table(rows));
    return kOk;
}

struct DesignOpts {
    CodeOpts code;
    std::uint32_t r = 1;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string tau_scale = "1";
    std::string out;
    std::string format = "json";
};

int cmd_verify_design(const DesignOpts& o) {
    const FrsCode code = o.code.build();
    const Rational scale = Rational::parse(o.tau_scale);
    const DesignReport report = o.samples == 0
                                    ? verify_design_exhaustive(code, o.r, scale)
                                    : verify_design_sampled(code, o.r, o.samples, o.seed, scale);
    std::vector<std::vector<std::string>> rows{
        {"r", "subspaces", "max statistic", "bound", "violations"},
        {std::to_string(report.r), std::to_string(report.subspaces_checked),
         report.max_statistic.to_string(), report.bound.to_string(),
         std::to_string(report.violation_count)},
    };
    emit(o.out, o.format, design_report_json(report), render_table(rows));
    return report.pass() ? kOk : kFailedCheck;
}

struct PruneStatsOpts {
    CodeOpts code;
    std::uint32_t r = 3;
    std::string eta = "1/4";
    std::string eta_prime = "1/8";
    std::uint32_t ell = 2;
    std::string noise = "0";
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

std::vector<std::vector<std::string>> estimator_rows(const EstimatorReport& report) {
    return {
        {"trials", "successes", "estimate", "floor", "margin", "verdict"},
        {std::to_string(report.trials), std::to_string(report.successes),
         trim_number(report.estimate.to_double()), report.floor.to_string(),
         trim_number(report.z_margin),
         !report.hypothesis_met ? "hypothesis unmet" : (*report.pass() ? "pass" : "fail")},
    };
}

int cmd_verify_prune_stats(const PruneStatsOpts& o) {
    const FrsCode code = o.code.build();
    const PruneParams params(Rational::parse(o.eta), Rational::parse(o.eta_prime));

    Rng gen = Rng::stream(o.seed, 0);
    const PlantedInstance planted =
        make_planted_instance(code, 1, o.ell, Rational::parse(o.noise), gen);
    const Subspace space = span_around(code, planted.planted.front(), o.r, gen);

    const EstimatorReport report = estimate_fprune_success(
        code, space, planted.planted.front(), planted.instance, params, o.trials, o.seed);
    if (!report.hypothesis_met) {
        std::cerr << "error: the planted codeword violates the distance hypothesis at r = "
                  << o.r << "; lower --noise or the eta parameters\n";
        return kConfigError;
    }
    emit(o.out, o.format, estimator_report_json(report), render_table(estimator_rows(report)));
    return *report.pass() ? kOk : kFailedCheck;
}

struct MonotonicityOpts {
    CodeOpts code;
    std::uint32_t max_dim = 4;
    std::uint32_t ell = 2;
    std::uint32_t count = 100;
    std::string eta = "1/8";
    std::string eta_prime = "1/8";
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

int cmd_verify_monotonicity(const MonotonicityOpts& o) {
    const FrsCode code = o.code.build();
    const PruneParams params(Rational::parse(o.eta), Rational::parse(o.eta_prime));
    const MonotonicityReport report =
        audit_monotonicity(code, o.max_dim, o.ell, o.count, params, o.seed);
    std::vector<std::vector<std::string>> rows{
        {"checked", "skipped", "counterexamples"},
        {std::to_string(report.checked), std::to_string(report.hypothesis_skipped),
         std::to_string(report.counterexamples.size())},
    };
    emit(o.out, o.format, monotonicity_report_json(report), render_table(rows));
    return report.pass() ? kOk : kFailedCheck;
}

struct BoundsOpts {
    CodeOpts code;
    std::uint32_t r = 0;
    std::uint32_t ell = 2;
    std::vector<std::string> grid = {"1/2", "1/4", "1/8"};
    std::uint32_t instances = 5;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

int cmd_verify_bounds(const BoundsOpts& o) {
    const FrsCode code = o.code.build();
    const Rational tau = code.tau(o.r);
    std::vector<Rational> grid;
    for (const std::string& text : o.grid) {
        const Rational eps = Rational::parse(text);
        if (tau + eps > Rational(1)) {
            std::cerr << "note: skipping epsilon " << eps.to_string() << " (tau(r) + epsilon = "
                      << (tau + eps).to_string() << " exceeds 1)\n";
            continue;
        }
        grid.push_back(eps);
    }
    if (grid.empty()) throw std::invalid_argument("no epsilon in the grid satisfies tau(r) + epsilon <= 1");
    const std::vector<BoundsRow> table =
        bounds_table(code, o.r, o.ell, grid, o.instances, o.seed);
    std::vector<std::vector<std::string>> rows{
        {"epsilon", "radius", "exact max", "list-size bound", "bcz bound"}};
    for (const BoundsRow& row : table)
        rows.push_back({row.epsilon.to_string(), row.radius.to_string(),
                        std::to_string(row.exact_max), trim_number(row.ours),
                        trim_number(row.bcz)});
    emit(o.out, o.format, bounds_table_json(table), render_table(rows));
    return kOk;
}

struct SelftestOpts {
    bool list = false;
    std::uint64_t seed = 4242;
    std::string cli;
    std::string out;
};

int cmd_selftest(const SelftestOpts& o, const std::string& self_path) {
    if (o.list) {
        for (const std::string& id : selftest_ids()) std::cout << id << "\n";
        return kOk;
    }
    const std::vector<CriterionResult> results =
        run_selftest(o.cli.empty() ? self_path : o.cli, o.seed);
    bool all = true;
    Json j = Json::array();
    for (const CriterionResult& res : results) {
        all = all && res.pass;
        std::ostringstream line;
        line << (res.pass ? "PASS" : "FAIL") << "  " << res.id << ": " << res.detail;
        std::cout << line.str() << "\n";
        std::cerr << res.id << " took " << res.seconds << "s\n";
        j.push_back({{"id", res.id}, {"pass", res.pass}, {"detail", res.detail}});
    }
    if (!o.out.empty()) write_json_file(o.out, j);
    return all ? kOk : kFailedCheck;
}

void add_output_flags(CLI::App& cmd, std::string& out, std::string& format) {
    cmd.add_option("--out", out, "write the report here (write-then-rename)");
    cmd.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured list recovery for folded Reed-Solomon codes"};
    app.require_subcommand(1);
    int rc = kOk;

    EncodeOpts encode_opts;
    CLI::App* encode = app.add_subcommand("encode", "encode a message file");
    encode_opts.code.attach(*encode);
    encode->add_option("--message", encode_opts.message_path, "JSON array of k residues")
        ->required();
    add_output_flags(*encode, encode_opts.out, encode_opts.format);
    encode->callback([&] { rc = cmd_encode(encode_opts); });

    RecoverOpts recover_opts;
    CLI::App* recover = app.add_subcommand("recover", "run the list-recovery pipeline");
    recover_opts.code.attach(*recover);
    CLI::Option* inst_opt =
        recover->add_option("--instance", recover_opts.instance_path, "instance JSON file");
    recover->add_option("--planted", recover_opts.planted, "planted codeword count")
        ->excludes(inst_opt)
        ->capture_default_str();
    recover->add_option("--noise", recover_opts.noise, "corruption fraction per planted codeword")
        ->excludes(inst_opt)
        ->capture_default_str();
    recover->add_option("--ell", recover_opts.ell, "list size of the generated instance")
        ->excludes(inst_opt)
        ->capture_default_str();
    CLI::Option* eps_opt = recover->add_option("--epsilon", recover_opts.epsilon,
                                               "derive r/eta/eta'/t from the rate and epsilon");
    CLI::Option* r_opt =
        recover->add_option("--r", recover_opts.r, "dimension budget (0 = step-1 dimension)");
    CLI::Option* eta_opt =
        recover->add_option("--eta", recover_opts.eta, "weight offset")->capture_default_str();
    CLI::Option* etap_opt = recover->add_option("--eta-prime", recover_opts.eta_prime,
                                                "qualifying threshold")
                                ->capture_default_str();
    CLI::Option* t_opt =
        recover->add_option("--t", recover_opts.t, "repetitions (0 = derive from t-prime)");
    CLI::Option* tp_opt = recover->add_option("--t-prime", recover_opts.t_prime,
                                              "coverage exponent for derived t")
                              ->capture_default_str();
    for (CLI::Option* opt : {r_opt, eta_opt, etap_opt, t_opt, tp_opt}) eps_opt->excludes(opt);
    recover->add_option("--seed", recover_opts.seed, "run seed")->capture_default_str();
    recover->add_option("--mode", recover_opts.mode, "step-1 space source")
        ->check(CLI::IsMember({"whole-code", "oracle-hull"}))
        ->capture_default_str();
    recover->add_flag("--exact-filter", recover_opts.exact_filter,
                      "append brute-force membership filtering per run");
    add_output_flags(*recover, recover_opts.out, recover_opts.format);
    recover->callback([&] { rc = cmd_recover(recover_opts); });

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);

    DesignOpts design_opts;
    CLI::App* design = verify->add_subcommand("design", "subspace-design statistic check");
    design_opts.code.attach(*design);
    design->add_option("--r", design_opts.r, "intersection dimension")->capture_default_str();
    design->add_option("--samples", design_opts.samples,
                       "random subspaces to try (0 = exhaustive)")
        ->capture_default_str();
    design->add_option("--seed", design_opts.seed, "sampling seed")->capture_default_str();
    design->add_option("--tau-scale", design_opts.tau_scale, "scale the bound (test hook)")
        ->group("");
    add_output_flags(*design, design_opts.out, design_opts.format);
    design->callback([&] { rc = cmd_verify_design(design_opts); });

    PruneStatsOpts prune_opts;
    CLI::App* prune_stats =
        verify->add_subcommand("prune-stats", "pruning success statistic floor");
    prune_opts.code.attach(*prune_stats);
    prune_stats->add_option("--r", prune_opts.r, "span dimension")->capture_default_str();
    prune_stats->add_option("--eta", prune_opts.eta, "weight offset")->capture_default_str();
    prune_stats->add_option("--eta-prime", prune_opts.eta_prime, "qualifying threshold")
        ->capture_default_str();
    prune_stats->add_option("--ell", prune_opts.ell, "list size")->capture_default_str();
    prune_stats->add_option("--noise", prune_opts.noise, "corruption fraction")
        ->capture_default_str();
    prune_stats->add_option("--trials", prune_opts.trials, "Monte Carlo trials")
        ->capture_default_str();
    prune_stats->add_option("--seed", prune_opts.seed, "trial seed")->capture_default_str();
    add_output_flags(*prune_stats, prune_opts.out, prune_opts.format);
    prune_stats->callback([&] { rc = cmd_verify_prune_stats(prune_opts); });

    MonotonicityOpts mono_opts;
    CLI::App* mono = verify->add_subcommand("monotonicity", "exact potential-step audit");
    mono_opts.code.attach(*mono);
    mono->add_option("--max-dim", mono_opts.max_dim, "largest span dimension")
        ->capture_default_str();
    mono->add_option("--ell", mono_opts.ell, "list size")->capture_default_str();
    mono->add_option("--count", mono_opts.count, "instances to audit")->capture_default_str();
    mono->add_option("--eta", mono_opts.eta, "weight offset")->capture_default_str();
    mono->add_option("--eta-prime", mono_opts.eta_prime, "qualifying threshold")
        ->capture_default_str();
    mono->add_option("--seed", mono_opts.seed, "instance seed")->capture_default_str();
    add_output_flags(*mono, mono_opts.out, mono_opts.format);
    mono->callback([&] { rc = cmd_verify_monotonicity(mono_opts); });

    BoundsOpts bounds_opts;
    CLI::App* bounds = verify->add_subcommand("bounds", "list-size bounds vs exhaustive counts");
    bounds_opts.code.attach(*bounds);
    bounds->add_option("--r", bounds_opts.r, "dimension budget (at least k)")->required();
    bounds->add_option("--ell", bounds_opts.ell, "list size")->capture_default_str();
    bounds->add_option("--epsilon-grid", bounds_opts.grid, "epsilon values")
        ->capture_default_str();
    bounds->add_option("--instances", bounds_opts.instances, "instances per epsilon")
        ->capture_default_str();
    bounds->add_option("--seed", bounds_opts.seed, "instance seed")->capture_default_str();
    add_output_flags(*bounds, bounds_opts.out, bounds_opts.format);
    bounds->callback([&] { rc = cmd_verify_bounds(bounds_opts); });

    SelftestOpts selftest_opts;
    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance corpus");
    selftest->add_flag("--list", selftest_opts.list, "print criterion ids and exit");
    selftest->add_option("--seed", selftest_opts.seed, "corpus seed")->capture_default_str();
    selftest->add_option("--cli", selftest_opts.cli,
                         "binary to exercise in the determinism check (default: this one)");
    selftest->add_option("--out", selftest_opts.out, "write a JSON result list here");
    const std::string self_path = argv && argv[0] ? argv[0] : "";
    selftest->callback([&] { rc = cmd_selftest(selftest_opts, self_path); });

    const auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    std::cerr << "elapsed "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << "s\n";
    return rc;
}
