// kipp command line driver. Talks to the engine exclusively through the
// public C API in kipp.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "kipp.h"

namespace {

struct ConfigHandle {
    kipp_config* c = kipp_config_new();
    ~ConfigHandle() { kipp_config_free(c); }
};

struct ReportHandle {
    kipp_report* r = nullptr;
    ~ReportHandle() { kipp_report_free(r); }
};

[[noreturn]] void die(const std::string& context) {
    std::cerr << "kipp: " << context;
    const char* msg = kipp_last_error();
    if (msg && *msg) std::cerr << ": " << msg;
    std::cerr << "\n";
    std::exit(1);
}

void check(kipp_status st, const std::string& context) {
    if (st != KIPP_OK) die(context);
}

void stderr_log(const char* line, void*) { std::cerr << line << "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (;;) {
        size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "kipp: cannot write '" << path << "'\n";
        std::exit(1);
    }
    f << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact decision procedure for polynomial-in-momenta first integrals of "
                 "geodesic flows of stationary axisymmetric metrics"};
    app.set_version_flag("--version", std::string(kipp_version()));

    // analysis options (the default command)
    std::string metric = "builtin:zipoy-voorhees";
    long delta = 2;
    int degree = 6;
    std::string parity = "both";
    std::string point = "1/2,2";
    int max_prolong = -1;
    std::string rank_method = "modular";
    int primes = 2;
    unsigned long long prime_seed = 0;
    std::string out_path, cache_dir, emit_matrix;
    std::string format = "text";
    bool full_table = false, quiet = false, no_flat_crosscheck = false;
    int degree_cap = 8;

    app.add_option("--metric", metric,
                   "Metric source: builtin:zipoy-voorhees or a metric definition file");
    app.add_option("--delta", delta, "Family parameter for the builtin metric (integer >= 0)");
    app.add_option("--degree", degree, "Degree of the momentum-polynomial ansatz");
    app.add_option("--parity", parity, "Subsystem selection: odd, even or both");
    app.add_option("--point", point, "Rational evaluation point, e.g. 1/2,2");
    app.add_option("--max-prolong", max_prolong, "Highest prolongation level (default degree+2)");
    app.add_option("--rank-method", rank_method, "Rank computation: exact, modular or both");
    app.add_option("--primes", primes, "Number of primes for the modular method");
    app.add_option("--prime-seed", prime_seed, "Seed of the deterministic prime stream");
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--format", format, "Report format: text, markdown or json");
    app.add_option("--cache-dir", cache_dir,
                   "Matrix cache directory (default: $KIPP_CACHE_DIR, else disabled)");
    app.add_option("--emit-matrix", emit_matrix, "Export assembled matrices to this directory");
    app.add_flag("--full-table", full_table, "Do not stop at the first Delta = 0 level");
    app.add_flag("--quiet", quiet, "Suppress progress output");
    app.add_flag("--no-flat-crosscheck", no_flat_crosscheck,
                 "Skip the flat-metric finite-type cross-validation");
    app.add_option("--degree-cap", degree_cap, "Refuse degrees above this cap");

    // kipp rank <file>
    auto* rank_cmd = app.add_subcommand("rank", "Rank of a sparse matrix in triplet format");
    std::string rank_file, rank_cmd_method = "exact";
    int rank_primes = 2;
    rank_cmd->add_option("file", rank_file, "Triplet file (rows cols nnz header)")->required();
    rank_cmd->add_option("--rank-method", rank_cmd_method, "exact, modular or both");
    rank_cmd->add_option("--primes", rank_primes, "Number of primes for the modular method");

    // kipp geodesic
    auto* geo_cmd = app.add_subcommand(
        "geodesic", "Non-rigorous RK4 conservation check of the geodesic flow");
    std::string geo_state = "60,0,0,0,1/200,1/100,11,1";
    long long geo_steps = 100000;
    double geo_step_size = 1e-3;
    geo_cmd->add_option("--state", geo_state, "Initial x,y,phi,t,p_x,p_y,p_phi,p_t");
    geo_cmd->add_option("--steps", geo_steps, "Number of RK4 steps");
    geo_cmd->add_option("--step-size", geo_step_size, "RK4 step size");

    CLI11_PARSE(app, argc, argv);

    if (rank_cmd->parsed()) {
        long long rank = 0;
        int certified = 0;
        check(kipp_matrix_rank_file(rank_file.c_str(), rank_cmd_method.c_str(), rank_primes, &rank,
                                    &certified),
              "rank computation failed");
        std::cout << "rank " << rank << (certified ? " (certified exact)" : " (modular only)")
                  << "\n";
        return 0;
    }

    ConfigHandle cfg;
    if (metric.rfind("builtin:", 0) == 0) {
        check(kipp_config_set_builtin_metric(cfg.c, metric.substr(8).c_str(), delta),
              "bad --metric/--delta");
    } else {
        check(kipp_config_set_metric_file(cfg.c, metric.c_str()), "bad --metric");
    }

    if (geo_cmd->parsed()) {
        std::vector<std::string> parts = split(geo_state, ',');
        if (parts.size() != 8) {
            std::cerr << "kipp: --state needs 8 comma-separated values\n";
            return 1;
        }
        double state[8];
        for (int i = 0; i < 8; ++i) {
            // accepts decimals and fractions like 1/5
            size_t slash = parts[i].find('/');
            if (slash == std::string::npos)
                state[i] = std::stod(parts[i]);
            else
                state[i] = std::stod(parts[i].substr(0, slash)) /
                           std::stod(parts[i].substr(slash + 1));
        }
        double drift[3] = {0, 0, 0};
        check(kipp_geodesic_sanity(cfg.c, state, geo_steps, geo_step_size, drift),
              "geodesic integration failed");
        std::cout << "geodesic sanity (non-rigorous, floating point):\n"
                  << "  steps: " << geo_steps << ", step size: " << geo_step_size << "\n"
                  << "  max relative H drift:  " << drift[0] << "\n"
                  << "  p_phi drift:           " << drift[1] << "\n"
                  << "  p_t drift:             " << drift[2] << "\n";
        return 0;
    }

    std::vector<std::string> pt = split(point, ',');
    if (pt.size() != 2) {
        std::cerr << "kipp: --point needs two comma-separated rationals\n";
        return 1;
    }
    check(kipp_config_set_point(cfg.c, pt[0].c_str(), pt[1].c_str()), "bad --point");
    check(kipp_config_set_degree(cfg.c, degree), "bad --degree");
    check(kipp_config_set_parity(cfg.c, parity.c_str()), "bad --parity");
    if (max_prolong >= 0)
        check(kipp_config_set_max_prolongation(cfg.c, max_prolong), "bad --max-prolong");
    check(kipp_config_set_rank_method(cfg.c, rank_method.c_str()), "bad --rank-method");
    check(kipp_config_set_prime_count(cfg.c, primes), "bad --primes");
    if (prime_seed) check(kipp_config_set_prime_seed(cfg.c, prime_seed), "bad --prime-seed");
    check(kipp_config_set_degree_cap(cfg.c, degree_cap), "bad --degree-cap");
    if (!cache_dir.empty())
        check(kipp_config_set_cache_dir(cfg.c, cache_dir.c_str()), "bad --cache-dir");
    if (!emit_matrix.empty())
        check(kipp_config_set_matrix_export_dir(cfg.c, emit_matrix.c_str()), "bad --emit-matrix");
    kipp_config_set_full_table(cfg.c, full_table ? 1 : 0);
    kipp_config_set_flat_crosscheck(cfg.c, no_flat_crosscheck ? 0 : 1);
    kipp_config_set_progress(cfg.c, quiet ? 0 : 1);
    if (!quiet) kipp_config_set_log(cfg.c, stderr_log, nullptr);

    ReportHandle report;
    check(kipp_run(cfg.c, &report.r), "analysis failed");

    char* rendered = nullptr;
    check(kipp_report_render(report.r, format.c_str(), &rendered), "bad --format");
    write_output(out_path, rendered);
    kipp_string_free(rendered);

    return kipp_report_exit_code(report.r);
}
