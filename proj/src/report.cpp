#include "report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace kipp {

using nlohmann::json;

ParitySelection parity_selection_from(const std::string& name) {
    if (name == "odd") return ParitySelection::Odd;
    if (name == "even") return ParitySelection::Even;
    if (name == "both") return ParitySelection::Both;
    throw ConfigError("unknown parity '" + name + "' (expected odd, even or both)");
}

const char* parity_selection_name(ParitySelection p) {
    switch (p) {
        case ParitySelection::Odd: return "odd";
        case ParitySelection::Even: return "even";
        case ParitySelection::Both: return "both";
    }
    return "?";
}

ReportFormat report_format_from(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "markdown") return ReportFormat::Markdown;
    if (name == "text") return ReportFormat::Text;
    throw ConfigError("unknown format '" + name + "' (expected json, markdown or text)");
}

int exit_code(const Report& r) {
    bool any_candidate = false, any_inconclusive = false;
    for (const auto& pr : r.parity_results) {
        if (pr.verdict.outcome == Outcome::CandidateKernel) any_candidate = true;
        if (pr.verdict.outcome == Outcome::Inconclusive) any_inconclusive = true;
    }
    if (any_candidate) return 2;
    if (any_inconclusive) return 3;
    return 0;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json config_to_json(const RunConfig& c) {
    return json{{"metric", c.metric},
                {"delta", c.delta},
                {"degree", c.degree},
                {"parity", parity_selection_name(c.parity)},
                {"point", {c.x0.str(), c.y0.str()}},
                {"max_prolong", c.effective_max_prolong()},
                {"rank_method", rank_method_name(c.rank_method)},
                {"prime_count", c.prime_count},
                {"prime_seed", c.prime_seed},
                {"full_table", c.full_table},
                {"flat_crosscheck", c.flat_crosscheck},
                {"degree_cap", c.degree_cap}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.metric = j.at("metric").get<std::string>();
    c.delta = j.at("delta").get<long>();
    c.degree = j.at("degree").get<int>();
    c.parity = parity_selection_from(j.at("parity").get<std::string>());
    c.x0 = Rational(j.at("point").at(0).get<std::string>());
    c.y0 = Rational(j.at("point").at(1).get<std::string>());
    c.max_prolong = j.at("max_prolong").get<int>();
    c.rank_method = rank_method_from(j.at("rank_method").get<std::string>());
    c.prime_count = j.at("prime_count").get<int>();
    c.prime_seed = j.at("prime_seed").get<uint64_t>();
    c.full_table = j.at("full_table").get<bool>();
    c.flat_crosscheck = j.at("flat_crosscheck").get<bool>();
    c.degree_cap = j.at("degree_cap").get<int>();
    return c;
}

json delta_table_to_json(const DeltaTable& t) {
    json rows = json::array();
    for (const DeltaRow& r : t.rows) {
        rows.push_back(json{{"n", r.n},
                            {"num_equations", r.num_equations},
                            {"dim_u", r.dim_u},
                            {"rank", r.rank.rank},
                            {"delta", r.delta},
                            {"certified", r.rank.certified_exact},
                            {"method", rank_method_name(r.rank.method)},
                            {"primes", r.rank.primes_used},
                            {"certificate", r.rank.certificate},
                            {"nnz", r.nnz},
                            {"max_entry_bits", r.max_entry_bits}});
    }
    json kernel = json::array();
    for (const auto& v : t.candidate_kernel) {
        json vec = json::array();
        for (const Rational& x : v) vec.push_back(x.str());
        kernel.push_back(vec);
    }
    return json{{"parity", parity_name(t.parity)},
                {"degree", t.degree},
                {"trivial_dim", t.trivial_dim},
                {"aborted_early", t.aborted_early},
                {"rows", rows},
                {"candidate_kernel", kernel},
                {"notes", t.notes}};
}

DeltaTable delta_table_from_json(const json& j) {
    DeltaTable t;
    t.parity = j.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
    t.degree = j.at("degree").get<int>();
    t.trivial_dim = j.at("trivial_dim").get<size_t>();
    t.aborted_early = j.at("aborted_early").get<bool>();
    for (const json& rj : j.at("rows")) {
        DeltaRow r;
        r.n = rj.at("n").get<int>();
        r.num_equations = rj.at("num_equations").get<size_t>();
        r.dim_u = rj.at("dim_u").get<size_t>();
        r.rank.rank = rj.at("rank").get<size_t>();
        r.delta = rj.at("delta").get<long>();
        r.rank.certified_exact = rj.at("certified").get<bool>();
        r.rank.method = rank_method_from(rj.at("method").get<std::string>());
        r.rank.primes_used = rj.at("primes").get<std::vector<uint64_t>>();
        r.rank.certificate = rj.at("certificate").get<std::string>();
        r.nnz = rj.at("nnz").get<size_t>();
        r.max_entry_bits = rj.at("max_entry_bits").get<size_t>();
        t.rows.push_back(std::move(r));
    }
    for (const json& vj : j.at("candidate_kernel")) {
        std::vector<Rational> v;
        for (const json& x : vj) v.emplace_back(x.get<std::string>());
        t.candidate_kernel.push_back(std::move(v));
    }
    t.notes = j.at("notes").get<std::vector<std::string>>();
    return t;
}

json finite_type_to_json(const FiniteTypeReport& f) {
    json rows = json::array();
    for (const FiniteTypeRow& r : f.rows) {
        rows.push_back(json{{"n", r.n},
                            {"num_equations", r.num_equations},
                            {"dim_v", r.dim_v},
                            {"rank", r.rank},
                            {"delta", r.delta}});
    }
    json out{{"parity", parity_name(f.parity)}, {"rows", rows}};
    if (f.ell)
        out["ell"] = *f.ell;
    else
        out["ell"] = nullptr;
    return out;
}

FiniteTypeReport finite_type_from_json(const json& j) {
    FiniteTypeReport f;
    f.parity = j.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
    for (const json& rj : j.at("rows")) {
        FiniteTypeRow r;
        r.n = rj.at("n").get<int>();
        r.num_equations = rj.at("num_equations").get<size_t>();
        r.dim_v = rj.at("dim_v").get<size_t>();
        r.rank = rj.at("rank").get<size_t>();
        r.delta = rj.at("delta").get<long>();
        f.rows.push_back(r);
    }
    if (!j.at("ell").is_null()) f.ell = j.at("ell").get<int>();
    return f;
}

json verdict_to_json(const Verdict& v) {
    json out{{"outcome", outcome_name(v.outcome)},
             {"kernel_excess", v.kernel_excess},
             {"certified", v.certified},
             {"reason", v.reason}};
    out["decisive_n"] = v.decisive_n ? json(*v.decisive_n) : json(nullptr);
    out["ell"] = v.ell ? json(*v.ell) : json(nullptr);
    return out;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    std::string o = j.at("outcome").get<std::string>();
    if (o == "NoNontrivialIntegral")
        v.outcome = Outcome::NoNontrivialIntegral;
    else if (o == "CandidateKernel")
        v.outcome = Outcome::CandidateKernel;
    else
        v.outcome = Outcome::Inconclusive;
    v.kernel_excess = j.at("kernel_excess").get<long>();
    v.certified = j.at("certified").get<bool>();
    v.reason = j.at("reason").get<std::string>();
    if (!j.at("decisive_n").is_null()) v.decisive_n = j.at("decisive_n").get<int>();
    if (!j.at("ell").is_null()) v.ell = j.at("ell").get<int>();
    return v;
}

json report_to_json(const Report& r) {
    json parity_results = json::array();
    for (const ParityResult& pr : r.parity_results) {
        json cert{{"method", rank_method_name(r.config.rank_method)},
                  {"point", {r.config.x0.str(), r.config.y0.str()}},
                  {"trivial_kernel_verified", true}};
        if (!pr.table.rows.empty()) cert["primes"] = pr.table.rows.back().rank.primes_used;
        json prj{{"parity", parity_name(pr.parity)},
                 {"delta_table", delta_table_to_json(pr.table)},
                 {"finite_type", finite_type_to_json(pr.finite_type)},
                 {"verdict", verdict_to_json(pr.verdict)},
                 {"certification", cert}};
        prj["flat_ell"] = pr.flat_ell ? json(*pr.flat_ell) : json(nullptr);
        parity_results.push_back(prj);
    }
    return json{{"version", r.version},
                {"config", config_to_json(r.config)},
                {"metric", json{{"name", r.metric_name}, {"hash", r.metric_hash}}},
                {"parity_results", parity_results},
                {"notes", r.notes},
                {"timing", json{{"total_seconds", r.total_seconds}}}};
}

}  // namespace

Report parse_report_json(const std::string& text) {
    json j = json::parse(text);
    Report r;
    r.version = j.at("version").get<std::string>();
    r.config = config_from_json(j.at("config"));
    r.metric_name = j.at("metric").at("name").get<std::string>();
    r.metric_hash = j.at("metric").at("hash").get<uint64_t>();
    for (const json& prj : j.at("parity_results")) {
        ParityResult pr;
        pr.parity = prj.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
        pr.table = delta_table_from_json(prj.at("delta_table"));
        pr.finite_type = finite_type_from_json(prj.at("finite_type"));
        pr.verdict = verdict_from_json(prj.at("verdict"));
        if (!prj.at("flat_ell").is_null()) pr.flat_ell = prj.at("flat_ell").get<int>();
        r.parity_results.push_back(std::move(pr));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.total_seconds = j.at("timing").at("total_seconds").get<double>();
    return r;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

namespace {

// Tabular layout: a header row of n values, then one row per quantity.
std::string render_table(const std::vector<std::string>& row_names,
                         const std::vector<std::vector<std::string>>& columns, bool markdown) {
    size_t nrows = row_names.size();
    std::vector<size_t> widths(columns.size() + 1, 0);
    for (size_t i = 0; i < nrows; ++i) widths[0] = std::max(widths[0], row_names[i].size());
    for (size_t c = 0; c < columns.size(); ++c)
        for (const std::string& cell : columns[c]) widths[c + 1] = std::max(widths[c + 1], cell.size());

    std::ostringstream os;
    auto emit_row = [&](size_t r) {
        os << (markdown ? "| " : "  ");
        os << row_names[r];
        os << std::string(widths[0] - row_names[r].size(), ' ');
        for (size_t c = 0; c < columns.size(); ++c) {
            const std::string& cell = columns[c][r];
            os << (markdown ? " | " : " | ");
            os << std::string(widths[c + 1] - cell.size(), ' ') << cell;
        }
        os << (markdown ? " |" : "") << "\n";
        if (markdown && r == 0) {
            os << "|";
            for (size_t c = 0; c <= columns.size(); ++c)
                os << std::string(widths[c] + 2, '-') << (c == columns.size() ? "|\n" : "|");
        }
    };
    for (size_t r = 0; r < nrows; ++r) emit_row(r);
    return os.str();
}

std::string delta_table_text(const DeltaTable& t, bool markdown) {
    std::vector<std::string> names = {"n", "# of eqn", "dim(u)", "rk(A)", "Delta"};
    std::vector<std::vector<std::string>> cols;
    for (const DeltaRow& r : t.rows) {
        cols.push_back({std::to_string(r.n), std::to_string(r.num_equations),
                        std::to_string(r.dim_u),
                        std::to_string(r.rank.rank) + (r.rank.certified_exact ? "" : "*"),
                        std::to_string(r.delta)});
    }
    return render_table(names, cols, markdown);
}

std::string finite_type_text(const FiniteTypeReport& f, bool markdown) {
    std::vector<std::string> names = {"n", "# of eqn", "dim(v)", "rk(B)", "Delta"};
    std::vector<std::vector<std::string>> cols;
    for (const FiniteTypeRow& r : f.rows) {
        cols.push_back({std::to_string(r.n), std::to_string(r.num_equations),
                        std::to_string(r.dim_v), std::to_string(r.rank),
                        std::to_string(r.delta)});
    }
    return render_table(names, cols, markdown);
}

std::string render_human(const Report& r, bool markdown) {
    std::ostringstream os;
    auto h1 = [&](const std::string& s) {
        if (markdown)
            os << "# " << s << "\n\n";
        else
            os << s << "\n" << std::string(s.size(), '=') << "\n\n";
    };
    auto h2 = [&](const std::string& s) {
        if (markdown)
            os << "## " << s << "\n\n";
        else
            os << s << "\n" << std::string(s.size(), '-') << "\n\n";
    };

    h1("Polynomial integral analysis");
    os << (markdown ? "- " : "") << "metric: " << r.metric_name << "\n";
    os << (markdown ? "- " : "") << "degree: " << r.config.degree
       << ", parity: " << parity_selection_name(r.config.parity) << ", point: ("
       << r.config.x0.str() << ", " << r.config.y0.str() << ")\n";
    os << (markdown ? "- " : "") << "rank method: " << rank_method_name(r.config.rank_method)
       << ", max prolongation: " << r.config.effective_max_prolong() << "\n\n";

    for (const ParityResult& pr : r.parity_results) {
        h2(std::string("Parity ") + parity_name(pr.parity));
        os << "trivial integral space dimension: " << pr.table.trivial_dim << "\n";
        os << "Delta = dim(u) - rk(A) - " << pr.table.trivial_dim << "\n\n";
        os << delta_table_text(pr.table, markdown) << "\n";
        if (std::any_of(pr.table.rows.begin(), pr.table.rows.end(),
                        [](const DeltaRow& row) { return !row.rank.certified_exact; }))
            os << (markdown ? "" : "  ") << "* modular rank, not independently certified\n\n";
        os << "finite-type (symbol) analysis:\n\n";
        os << finite_type_text(pr.finite_type, markdown) << "\n";
        if (pr.finite_type.ell)
            os << "ell = " << *pr.finite_type.ell;
        else
            os << "ell not reached";
        if (pr.flat_ell)
            os << " (flat-metric cross-check: ell = " << *pr.flat_ell
               << (pr.finite_type.ell && *pr.flat_ell == *pr.finite_type.ell ? ", matches"
                                                                             : ", DIFFERS")
               << ")";
        os << "\n\n";
        os << "verdict: " << outcome_name(pr.verdict.outcome);
        if (pr.verdict.outcome == Outcome::CandidateKernel)
            os << " (excess kernel dimension " << pr.verdict.kernel_excess << ")";
        os << "\n" << (markdown ? "> " : "  ") << pr.verdict.reason << "\n\n";
        for (const std::string& note : pr.table.notes)
            os << (markdown ? "- " : "  note: ") << note << "\n";
    }
    if (!r.notes.empty()) {
        h2("Notes");
        for (const std::string& n : r.notes) os << (markdown ? "- " : "  ") << n << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return report_to_json(r).dump(2) + "\n";
        case ReportFormat::Markdown: return render_human(r, true);
        case ReportFormat::Text: return render_human(r, false);
    }
    throw Error("bad report format");
}

}  // namespace kipp
