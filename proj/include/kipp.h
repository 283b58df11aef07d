/* kipp - exact search for polynomial first integrals of geodesic flows.
 *
 * C interface to the analysis engine. All functions return a kipp_status;
 * on KIPP_ERR_* the thread-local message from kipp_last_error() explains
 * what went wrong. Objects are opaque handles released with their _free
 * function; strings returned through char** are released with
 * kipp_string_free().
 */
#ifndef KIPP_H
#define KIPP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KIPP_API __declspec(dllexport)
#else
#define KIPP_API __attribute__((visibility("default")))
#endif

typedef enum kipp_status {
    KIPP_OK = 0,
    KIPP_ERR_INVALID_ARGUMENT = 1,
    KIPP_ERR_PARSE = 2,
    KIPP_ERR_SINGULAR_POINT = 3,
    KIPP_ERR_IO = 4,
    KIPP_ERR_INTERNAL = 5
} kipp_status;

/* Verdict-derived process exit codes:
 * 0 no nontrivial integral (all selected parities), 2 candidate kernel,
 * 3 inconclusive. (1 is reserved for errors.) */

typedef struct kipp_config kipp_config;
typedef struct kipp_report kipp_report;

KIPP_API const char* kipp_version(void);

/* Thread-local message for the most recent failing call. */
KIPP_API const char* kipp_last_error(void);

KIPP_API void kipp_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Run configuration                                                    */
/* ------------------------------------------------------------------ */

KIPP_API kipp_config* kipp_config_new(void);
KIPP_API void kipp_config_free(kipp_config* cfg);

/* family: currently "zipoy-voorhees"; delta must be a non-negative integer. */
KIPP_API kipp_status kipp_config_set_builtin_metric(kipp_config* cfg, const char* family,
                                                    long delta);
KIPP_API kipp_status kipp_config_set_metric_file(kipp_config* cfg, const char* path);
KIPP_API kipp_status kipp_config_set_degree(kipp_config* cfg, int degree);
/* parity: "odd", "even" or "both" */
KIPP_API kipp_status kipp_config_set_parity(kipp_config* cfg, const char* parity);
/* exact rationals, e.g. "1/2" and "2" */
KIPP_API kipp_status kipp_config_set_point(kipp_config* cfg, const char* x, const char* y);
KIPP_API kipp_status kipp_config_set_max_prolongation(kipp_config* cfg, int n);
/* method: "exact", "modular" or "both" */
KIPP_API kipp_status kipp_config_set_rank_method(kipp_config* cfg, const char* method);
KIPP_API kipp_status kipp_config_set_prime_count(kipp_config* cfg, int count);
KIPP_API kipp_status kipp_config_set_prime_seed(kipp_config* cfg, unsigned long long seed);
KIPP_API kipp_status kipp_config_set_full_table(kipp_config* cfg, int enabled);
KIPP_API kipp_status kipp_config_set_flat_crosscheck(kipp_config* cfg, int enabled);
KIPP_API kipp_status kipp_config_set_degree_cap(kipp_config* cfg, int cap);
KIPP_API kipp_status kipp_config_set_cache_dir(kipp_config* cfg, const char* dir);
KIPP_API kipp_status kipp_config_set_matrix_export_dir(kipp_config* cfg, const char* dir);
KIPP_API kipp_status kipp_config_set_progress(kipp_config* cfg, int enabled);

/* ------------------------------------------------------------------ */
/* Analysis                                                             */
/* ------------------------------------------------------------------ */

/* Progress lines are delivered to the callback when configured. */
typedef void (*kipp_log_fn)(const char* line, void* user);
KIPP_API kipp_status kipp_config_set_log(kipp_config* cfg, kipp_log_fn fn, void* user);

KIPP_API kipp_status kipp_run(const kipp_config* cfg, kipp_report** out);
KIPP_API void kipp_report_free(kipp_report* report);

/* format: "json", "markdown" or "text" */
KIPP_API kipp_status kipp_report_render(const kipp_report* report, const char* format, char** out);

/* 0 / 2 / 3 per the verdict contract above. */
KIPP_API int kipp_report_exit_code(const kipp_report* report);

/* ------------------------------------------------------------------ */
/* Utilities                                                            */
/* ------------------------------------------------------------------ */

/* Parses an expression over comma-separated variables, evaluates it at
 * comma-separated rational values and returns the exact value as a string. */
KIPP_API kipp_status kipp_expr_eval(const char* expr, const char* vars_csv, const char* values_csv,
                                    char** out_value);

/* Rank of a sparse matrix in the triplet file format.
 * method as above; certified is set to 1 when the result is exact. */
KIPP_API kipp_status kipp_matrix_rank_file(const char* path, const char* method, int prime_count,
                                           long long* out_rank, int* out_certified);

/* Integrates the geodesic flow of the configured metric from
 * state = {x, y, phi, t, p_x, p_y, p_phi, p_t} with fixed-step RK4 and
 * reports out_drift = {relative H drift, p_phi drift, p_t drift}. */
KIPP_API kipp_status kipp_geodesic_sanity(const kipp_config* cfg, const double state[8],
                                          long long steps, double step_size, double out_drift[3]);

#ifdef __cplusplus
}
#endif

#endif /* KIPP_H */
