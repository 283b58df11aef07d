#pragma once

#include <functional>
#include <optional>
#include <string>

#include "metric.hpp"
#include "prolong.hpp"
#include "report.hpp"

namespace kipp {

inline constexpr const char* kVersion = "0.2.0";

uint64_t fnv64(const std::string& data);

// Directory-backed cache of assembled matrices in the triplet format,
// content-addressed by (metric hash, degree, parity, level, point) and
// guarded by a stored checksum.
class MatrixCache {
public:
    explicit MatrixCache(std::string dir);

    static std::string key(uint64_t metric_hash, int degree, Parity parity, int level,
                           const Rational& x0, const Rational& y0);

    // Throws CacheError when the stored checksum does not match.
    std::optional<SparseRationalMatrix> load(const std::string& key);
    void store(const std::string& key, const SparseRationalMatrix& m);

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
};

// Environment variable consulted when RunConfig::cache_dir is empty.
inline constexpr const char* kCacheEnvVar = "KIPP_CACHE_DIR";

MetricSpec resolve_metric(const RunConfig& config);

// The full pipeline: metric -> Hamiltonian -> PDE system -> parity split ->
// per-parity (finite type, delta table, verdict) -> report.
Report run(const RunConfig& config, const std::function<void(const std::string&)>& log = {});

}  // namespace kipp
