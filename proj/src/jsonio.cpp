#include "listrec/jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace listrec {

namespace {

std::string step1_mode_name(Step1Mode mode) {
    return mode == Step1Mode::whole_code ? "whole-code" : "oracle-hull";
}

}  // namespace

Json shape_to_json(const Shape& shape) {
    return Json{{"n", shape.n}, {"s", shape.s}, {"q", shape.q}};
}

Shape shape_from_json(const Json& j) {
    return Shape{j.at("n").get<std::uint32_t>(), j.at("s").get<std::uint32_t>(),
                 j.at("q").get<std::uint32_t>()};
}

Json rational_to_json(const Rational& x) { return x.to_string(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return Rational::parse(j.get<std::string>());
}

Json code_to_json(const FrsCode& code) {
    return Json{{"q", code.q()},         {"n", code.n()},      {"k", code.k()},
                {"s", code.s()},         {"gamma", code.gamma()},
                {"alphas", code.alphas()}};
}

FrsCode code_from_json(const Json& j) {
    FrsCode code(j.at("q").get<std::uint32_t>(), j.at("n").get<std::uint32_t>(),
                 j.at("k").get<std::uint32_t>(), j.at("s").get<std::uint32_t>());
    if (j.contains("gamma") && j.at("gamma").get<std::uint32_t>() != code.gamma())
        throw std::invalid_argument("gamma does not match the declared code");
    if (j.contains("alphas") && j.at("alphas").get<std::vector<std::uint32_t>>() != code.alphas())
        throw std::invalid_argument("alphas do not match the declared code");
    return code;
}

Json codeword_to_json(const Shape& shape, const Vec& v) {
    if (v.size() != shape.flat_len()) throw std::invalid_argument("codeword length mismatch");
    Json j = Json::array();
    for (std::uint32_t i = 0; i < shape.n; ++i) {
        Json column = Json::array();
        for (std::uint32_t row = 0; row < shape.s; ++row)
            column.push_back(v[std::size_t{i} * shape.s + row]);
        j.push_back(std::move(column));
    }
    return j;
}

Vec codeword_from_json(const Shape& shape, const Json& j) {
    if (!j.is_array() || j.size() != shape.n)
        throw std::invalid_argument("codeword must have n columns");
    Vec v;
    v.reserve(shape.flat_len());
    for (const Json& column : j) {
        if (!column.is_array() || column.size() != shape.s)
            throw std::invalid_argument("codeword column must have s entries");
        for (const Json& entry : column) {
            const auto value = entry.get<std::uint32_t>();
            if (value >= shape.q) throw std::invalid_argument("codeword entry out of range");
            v.push_back(value);
        }
    }
    return v;
}

Json vec_to_json(const Vec& v) { return Json(v); }

Vec vec_from_json(const Json& j) { return j.get<Vec>(); }

Json subspace_to_json(const Subspace& space) {
    Json basis = Json::array();
    for (const Vec& row : space.basis()) basis.push_back(vec_to_json(row));
    return Json{{"shape", shape_to_json(space.shape())}, {"basis", std::move(basis)}};
}

Subspace subspace_from_json(const Json& j) {
    const Shape shape = shape_from_json(j.at("shape"));
    std::vector<Vec> rows;
    for (const Json& row : j.at("basis")) rows.push_back(vec_from_json(row));
    return Subspace::span(shape, rows);
}

Json affine_to_json(const AffineSpace& space) {
    return Json{{"offset", vec_to_json(space.offset())},
                {"direction", subspace_to_json(space.direction())}};
}

AffineSpace affine_from_json(const Json& j) {
    return AffineSpace(vec_from_json(j.at("offset")), subspace_from_json(j.at("direction")));
}

Json trace_to_json(const PruneTrace& trace) {
    Json pinned = Json::array();
    for (std::uint32_t i : trace.pinned) pinned.push_back(i + 1);
    return Json{{"pinned", std::move(pinned)}, {"dims", trace.dims}, {"failed", trace.failed}};
}

PruneTrace trace_from_json(const Json& j) {
    PruneTrace trace;
    for (const Json& entry : j.at("pinned")) {
        const auto coord = entry.get<std::uint32_t>();
        if (coord == 0) throw std::invalid_argument("pinned coordinates are 1-based");
        trace.pinned.push_back(coord - 1);
    }
    trace.dims = j.at("dims").get<std::vector<std::uint32_t>>();
    trace.failed = j.at("failed").get<bool>();
    return trace;
}

Json sumset_to_json(const SumSet& p) {
    Json summands = Json::array();
    for (const std::vector<Vec>& summand : p.summands) {
        Json set = Json::array();
        for (const Vec& v : summand) set.push_back(vec_to_json(v));
        summands.push_back(std::move(set));
    }
    return Json{{"shape", shape_to_json(p.shape)},
                {"u", p.u},
                {"v", p.v},
                {"summands", std::move(summands)}};
}

SumSet sumset_from_json(const Json& j) {
    SumSet p;
    p.shape = shape_from_json(j.at("shape"));
    p.u = j.at("u").get<std::uint32_t>();
    p.v = j.at("v").get<std::uint32_t>();
    for (const Json& set : j.at("summands")) {
        std::vector<Vec> summand;
        for (const Json& v : set) summand.push_back(vec_from_json(v));
        p.summands.push_back(std::move(summand));
    }
    return p;
}

Json instance_to_json(const ListRecoveryInstance& inst) {
    Json lists = Json::array();
    for (const std::vector<Symbol>& list : inst.lists()) {
        Json one = Json::array();
        for (const Symbol& symbol : list) one.push_back(Json(symbol));
        lists.push_back(std::move(one));
    }
    return Json{{"shape", shape_to_json(inst.shape())},
                {"lists", std::move(lists)},
                {"ell", inst.ell()},
                {"delta", rational_to_json(inst.delta())}};
}

ListRecoveryInstance instance_from_json(const Json& j) {
    const Shape shape = shape_from_json(j.at("shape"));
    std::vector<std::vector<Symbol>> lists;
    for (const Json& one : j.at("lists")) {
        std::vector<Symbol> list;
        for (const Json& symbol : one) list.push_back(symbol.get<Symbol>());
        lists.push_back(std::move(list));
    }
    return ListRecoveryInstance(shape, std::move(lists), j.at("ell").get<std::uint32_t>(),
                                rational_from_json(j.at("delta")));
}

Json recovery_report(const FrsCode& code, const ListRecoveryInstance& inst,
                     const RecoveryOutput& out, const std::optional<std::vector<Vec>>& planted,
                     std::optional<bool> covered) {
    const RecoveryConfig& cfg = out.config;
    Json config{{"r", cfg.r},
                {"eta", rational_to_json(cfg.eta)},
                {"eta_prime", rational_to_json(cfg.eta_prime)},
                {"t", cfg.t},
                {"t_prime", cfg.t_prime},
                {"seed", cfg.seed},
                {"step1_mode", step1_mode_name(cfg.step1_mode)},
                {"exact_filter", cfg.exact_filter}};

    Json step1{{"mode", step1_mode_name(cfg.step1_mode)},
               {"dim", out.space ? Json(out.space->dim()) : Json(nullptr)}};

    Json runs = Json::array();
    for (const RunRecord& rec : out.runs) {
        Json run{{"trace", trace_to_json(rec.trace)}};
        if (rec.sumset)
            run["sumset"] = sumset_to_json(*rec.sumset);
        else
            run["failed"] = true;
        if (rec.exact_members) {
            Json members = Json::array();
            for (const Vec& v : *rec.exact_members)
                members.push_back(codeword_to_json(code.shape(), v));
            run["exact_members"] = std::move(members);
        }
        runs.push_back(std::move(run));
    }

    const Rational tau = code.tau(cfg.r);
    const Rational eps_bcz = (tau + cfg.eta) / (Rational(1) - cfg.eta_prime) - tau;
    Json bounds{{"list_size", bound_list_size(cfg.r, cfg.eta, cfg.eta_prime, inst.ell())}};
    if (!eps_bcz.is_zero() && !eps_bcz.is_negative() && !(tau + eps_bcz > Rational(1)))
        bounds["bcz"] = bound_bcz(inst.ell(), tau, eps_bcz);
    else
        bounds["bcz"] = nullptr;

    Json report{{"config", std::move(config)},
                {"code_params", code_to_json(code)},
                {"step1", std::move(step1)},
                {"runs", std::move(runs)}};
    if (planted) {
        Json targets = Json::array();
        for (const Vec& v : *planted) targets.push_back(codeword_to_json(code.shape(), v));
        report["coverage"] =
            Json{{"planted", std::move(targets)},
                 {"covered", covered ? Json(*covered) : Json(nullptr)}};
    }
    report["bounds"] = std::move(bounds);
    return report;
}

Json design_report_json(const DesignReport& report) {
    Json violations = Json::array();
    for (const Subspace& h : report.violations) violations.push_back(subspace_to_json(h));
    return Json{{"r", report.r},
                {"subspaces_checked", report.subspaces_checked},
                {"max_statistic", rational_to_json(report.max_statistic)},
                {"bound", rational_to_json(report.bound)},
                {"violation_count", report.violation_count},
                {"violations", std::move(violations)},
                {"pass", report.pass()}};
}

Json estimator_report_json(const EstimatorReport& report) {
    const std::optional<bool> pass = report.pass();
    return Json{{"trials", report.trials},
                {"successes", report.successes},
                {"estimate", rational_to_json(report.estimate)},
                {"floor", rational_to_json(report.floor)},
                {"z_margin", report.z_margin},
                {"hypothesis_met", report.hypothesis_met},
                {"pass", pass ? Json(*pass) : Json(nullptr)}};
}

Json monotonicity_report_json(const MonotonicityReport& report) {
    Json examples = Json::array();
    for (const MonotonicityCounterexample& ex : report.counterexamples)
        examples.push_back(Json{{"space", subspace_to_json(ex.space)},
                                {"c", vec_to_json(ex.c)},
                                {"lists", instance_to_json(ex.lists)},
                                {"before", rational_to_json(ex.before)},
                                {"after", rational_to_json(ex.after)}});
    return Json{{"checked", report.checked},
                {"hypothesis_skipped", report.hypothesis_skipped},
                {"counterexample_count", report.counterexamples.size()},
                {"counterexamples", std::move(examples)},
                {"pass", report.pass()}};
}

Json bounds_table_json(const std::vector<BoundsRow>& table) {
    Json rows = Json::array();
    for (const BoundsRow& row : table)
        rows.push_back(Json{{"epsilon", rational_to_json(row.epsilon)},
                            {"radius", rational_to_json(row.radius)},
                            {"exact_max", row.exact_max},
                            {"ours", row.ours},
                            {"bcz", row.bcz}});
    return Json{{"rows", std::move(rows)}};
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << j.dump(2) << '\n';
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return Json::parse(in);
}

}  // namespace listrec
