#include "kipp.h"

#include <cstring>
#include <string>

#include "engine.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "geodesic.hpp"
#include "modular.hpp"

using namespace kipp;

struct kipp_config {
    RunConfig cfg;
    kipp_log_fn log_fn = nullptr;
    void* log_user = nullptr;
};

struct kipp_report {
    Report report;
};

namespace {

thread_local std::string g_last_error;

kipp_status fail(kipp_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
kipp_status guard(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        return fail(KIPP_ERR_PARSE, e.what());
    } catch (const SingularPointError& e) {
        return fail(KIPP_ERR_SINGULAR_POINT, e.what());
    } catch (const DenominatorVanishes& e) {
        return fail(KIPP_ERR_SINGULAR_POINT, e.what());
    } catch (const ConfigError& e) {
        return fail(KIPP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const IoError& e) {
        return fail(KIPP_ERR_IO, e.what());
    } catch (const CacheError& e) {
        return fail(KIPP_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(KIPP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(KIPP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(KIPP_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    // trim spaces
    for (auto& t : out) {
        size_t a = t.find_first_not_of(" \t");
        size_t b = t.find_last_not_of(" \t");
        t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
    }
    return out;
}

}  // namespace

extern "C" {

const char* kipp_version(void) { return kVersion; }

const char* kipp_last_error(void) { return g_last_error.c_str(); }

void kipp_string_free(char* s) { delete[] s; }

kipp_config* kipp_config_new(void) { return new kipp_config(); }

void kipp_config_free(kipp_config* cfg) { delete cfg; }

#define KIPP_REQUIRE(cond, msg) \
    if (!(cond)) return fail(KIPP_ERR_INVALID_ARGUMENT, msg)

kipp_status kipp_config_set_builtin_metric(kipp_config* cfg, const char* family, long delta) {
    KIPP_REQUIRE(cfg && family, "null argument");
    return guard([&] {
        if (std::string(family) != "zipoy-voorhees")
            throw ConfigError("unknown builtin metric '" + std::string(family) + "'");
        if (delta < 0) throw ConfigError("delta must be a non-negative integer");
        cfg->cfg.metric = "builtin:" + std::string(family);
        cfg->cfg.delta = delta;
        return KIPP_OK;
    });
}

kipp_status kipp_config_set_metric_file(kipp_config* cfg, const char* path) {
    KIPP_REQUIRE(cfg && path, "null argument");
    cfg->cfg.metric = "file:" + std::string(path);
    return KIPP_OK;
}

kipp_status kipp_config_set_degree(kipp_config* cfg, int degree) {
    KIPP_REQUIRE(cfg, "null argument");
    KIPP_REQUIRE(degree >= 1, "degree must be at least 1");
    cfg->cfg.degree = degree;
    return KIPP_OK;
}

kipp_status kipp_config_set_parity(kipp_config* cfg, const char* parity) {
    KIPP_REQUIRE(cfg && parity, "null argument");
    return guard([&] {
        cfg->cfg.parity = parity_selection_from(parity);
        return KIPP_OK;
    });
}

kipp_status kipp_config_set_point(kipp_config* cfg, const char* x, const char* y) {
    KIPP_REQUIRE(cfg && x && y, "null argument");
    return guard([&] {
        cfg->cfg.x0 = Rational(std::string(x));
        cfg->cfg.y0 = Rational(std::string(y));
        return KIPP_OK;
    });
}

kipp_status kipp_config_set_max_prolongation(kipp_config* cfg, int n) {
    KIPP_REQUIRE(cfg, "null argument");
    KIPP_REQUIRE(n >= 0, "max prolongation must be non-negative");
    cfg->cfg.max_prolong = n;
    return KIPP_OK;
}

kipp_status kipp_config_set_rank_method(kipp_config* cfg, const char* method) {
    KIPP_REQUIRE(cfg && method, "null argument");
    return guard([&] {
        cfg->cfg.rank_method = rank_method_from(method);
        return KIPP_OK;
    });
}

kipp_status kipp_config_set_prime_count(kipp_config* cfg, int count) {
    KIPP_REQUIRE(cfg, "null argument");
    KIPP_REQUIRE(count >= 1, "prime count must be at least 1");
    cfg->cfg.prime_count = count;
    return KIPP_OK;
}

kipp_status kipp_config_set_prime_seed(kipp_config* cfg, unsigned long long seed) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.prime_seed = seed;
    return KIPP_OK;
}

kipp_status kipp_config_set_full_table(kipp_config* cfg, int enabled) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.full_table = enabled != 0;
    return KIPP_OK;
}

kipp_status kipp_config_set_flat_crosscheck(kipp_config* cfg, int enabled) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.flat_crosscheck = enabled != 0;
    return KIPP_OK;
}

kipp_status kipp_config_set_degree_cap(kipp_config* cfg, int cap) {
    KIPP_REQUIRE(cfg, "null argument");
    KIPP_REQUIRE(cap >= 1, "degree cap must be at least 1");
    cfg->cfg.degree_cap = cap;
    return KIPP_OK;
}

kipp_status kipp_config_set_cache_dir(kipp_config* cfg, const char* dir) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.cache_dir = dir ? dir : "";
    return KIPP_OK;
}

kipp_status kipp_config_set_matrix_export_dir(kipp_config* cfg, const char* dir) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.emit_matrix_dir = dir ? dir : "";
    return KIPP_OK;
}

kipp_status kipp_config_set_progress(kipp_config* cfg, int enabled) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->cfg.progress = enabled != 0;
    return KIPP_OK;
}

kipp_status kipp_config_set_log(kipp_config* cfg, kipp_log_fn fn, void* user) {
    KIPP_REQUIRE(cfg, "null argument");
    cfg->log_fn = fn;
    cfg->log_user = user;
    return KIPP_OK;
}

kipp_status kipp_run(const kipp_config* cfg, kipp_report** out) {
    KIPP_REQUIRE(cfg && out, "null argument");
    *out = nullptr;
    return guard([&] {
        std::function<void(const std::string&)> log;
        if (cfg->log_fn) {
            kipp_log_fn fn = cfg->log_fn;
            void* user = cfg->log_user;
            log = [fn, user](const std::string& line) { fn(line.c_str(), user); };
        }
        Report r = run(cfg->cfg, log);
        *out = new kipp_report{std::move(r)};
        return KIPP_OK;
    });
}

void kipp_report_free(kipp_report* report) { delete report; }

kipp_status kipp_report_render(const kipp_report* report, const char* format, char** out) {
    KIPP_REQUIRE(report && format && out, "null argument");
    *out = nullptr;
    return guard([&] {
        std::string s = emit_report(report->report, report_format_from(format));
        *out = dup_string(s);
        return KIPP_OK;
    });
}

int kipp_report_exit_code(const kipp_report* report) {
    if (!report) return 1;
    return exit_code(report->report);
}

kipp_status kipp_expr_eval(const char* expr, const char* vars_csv, const char* values_csv,
                           char** out_value) {
    KIPP_REQUIRE(expr && vars_csv && values_csv && out_value, "null argument");
    *out_value = nullptr;
    return guard([&] {
        std::vector<std::string> vars = split_csv(vars_csv);
        std::vector<std::string> vals = split_csv(values_csv);
        if (vars.size() != vals.size()) throw ConfigError("variable/value count mismatch");
        ExprAst ast = parse_expression(expr, vars);
        RationalFunction f = to_rational_function(ast);
        std::vector<Rational> point;
        point.reserve(vals.size());
        for (const std::string& v : vals) point.emplace_back(v);
        *out_value = dup_string(f.evaluate(point).str());
        return KIPP_OK;
    });
}

kipp_status kipp_matrix_rank_file(const char* path, const char* method, int prime_count,
                                  long long* out_rank, int* out_certified) {
    KIPP_REQUIRE(path && method && out_rank, "null argument");
    return guard([&] {
        SparseRationalMatrix m = load_triplets(path);
        RankMethod rm = rank_method_from(method);
        RankResult r;
        if (rm == RankMethod::Modular) {
            r = rank_modular(m, draw_primes(m, prime_count < 1 ? 2 : prime_count,
                                            kDefaultPrimeSeed));
        } else {
            r = rank_with_certificate(m, rm, draw_primes(m, prime_count < 1 ? 2 : prime_count,
                                                         kDefaultPrimeSeed), {});
        }
        *out_rank = static_cast<long long>(r.rank);
        if (out_certified) *out_certified = r.certified_exact ? 1 : 0;
        return KIPP_OK;
    });
}

kipp_status kipp_geodesic_sanity(const kipp_config* cfg, const double state[8], long long steps,
                                 double step_size, double out_drift[3]) {
    KIPP_REQUIRE(cfg && state && out_drift, "null argument");
    return guard([&] {
        MetricSpec metric = resolve_metric(cfg->cfg);
        metric.validate();
        std::array<double, 8> s;
        for (int i = 0; i < 8; ++i) s[i] = state[i];
        GeodesicResult r = geodesic_sanity(metric, s, static_cast<long>(steps), step_size);
        out_drift[0] = r.drift_h;
        out_drift[1] = r.drift_pphi;
        out_drift[2] = r.drift_pt;
        return KIPP_OK;
    });
}

}  // extern "C"
