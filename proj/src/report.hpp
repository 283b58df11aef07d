#pragma once

#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace kipp {

enum class ParitySelection { Odd, Even, Both };
ParitySelection parity_selection_from(const std::string& name);
const char* parity_selection_name(ParitySelection p);

enum class ReportFormat { Json, Markdown, Text };
ReportFormat report_format_from(const std::string& name);

// Everything the run driver was configured with, echoed into reports.
struct RunConfig {
    std::string metric = "builtin:zipoy-voorhees";  // or "file:<path>"
    long delta = 2;
    int degree = 6;
    ParitySelection parity = ParitySelection::Both;
    Rational x0{1, 2};
    Rational y0{2, 1};
    int max_prolong = -1;  // -1: degree + 2
    RankMethod rank_method = RankMethod::Modular;
    int prime_count = 2;
    uint64_t prime_seed = 0;  // 0: built-in default
    bool full_table = false;
    bool flat_crosscheck = true;
    int degree_cap = 8;
    std::string cache_dir;        // empty: environment variable or disabled
    std::string emit_matrix_dir;  // empty: no export
    bool progress = true;

    int effective_max_prolong() const { return max_prolong < 0 ? degree + 2 : max_prolong; }
};

struct ParityResult {
    Parity parity = Parity::Even;
    DeltaTable table;
    FiniteTypeReport finite_type;
    std::optional<int> flat_ell;  // cross-validation against the flat member
    Verdict verdict;
};

struct Report {
    std::string version;
    RunConfig config;
    std::string metric_name;
    uint64_t metric_hash = 0;
    std::vector<ParityResult> parity_results;
    std::vector<std::string> notes;
    double total_seconds = 0;
};

// 0 when every selected parity is NoNontrivialIntegral, 2 when any parity
// reports CandidateKernel, 3 when any is Inconclusive (and none Candidate).
int exit_code(const Report& r);

std::string emit_report(const Report& r, ReportFormat format);

// Inverse of emit_report for the JSON format.
Report parse_report_json(const std::string& text);

}  // namespace kipp
