#include "engine.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace kipp {

namespace fs = std::filesystem;

uint64_t fnv64(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

MatrixCache::MatrixCache(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

namespace {
std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out += (c == '/' ? 'q' : c == '-' ? 'm' : c);
    return out;
}
}  // namespace

std::string MatrixCache::key(uint64_t metric_hash, int degree, Parity parity, int level,
                             const Rational& x0, const Rational& y0) {
    std::ostringstream os;
    os << "A_" << std::hex << metric_hash << std::dec << "_d" << degree << "_"
       << parity_name(parity) << "_n" << level << "_" << sanitize(x0.str()) << "_"
       << sanitize(y0.str());
    return os.str();
}

std::optional<SparseRationalMatrix> MatrixCache::load(const std::string& key) {
    fs::path mtx = fs::path(dir_) / (key + ".mtx");
    fs::path meta = fs::path(dir_) / (key + ".meta");
    if (!fs::exists(mtx) || !fs::exists(meta)) return std::nullopt;

    std::ifstream in(mtx);
    std::ostringstream payload;
    payload << in.rdbuf();
    std::string data = payload.str();

    std::ifstream metain(meta);
    std::string tag;
    uint64_t checksum = 0;
    if (!(metain >> tag >> std::hex >> checksum) || tag != "fnv64")
        throw CacheError("cache entry '" + key + "' has a malformed meta file");
    if (fnv64(data) != checksum)
        throw CacheError("cache entry '" + key + "' failed its checksum; delete it to recompute");

    std::istringstream is(data);
    return read_triplets(is);
}

void MatrixCache::store(const std::string& key, const SparseRationalMatrix& m) {
    std::ostringstream payload;
    write_triplets(m, payload);
    std::string data = payload.str();

    fs::path mtx = fs::path(dir_) / (key + ".mtx");
    fs::path meta = fs::path(dir_) / (key + ".meta");
    {
        std::ofstream out(mtx);
        if (!out) throw CacheError("cannot write cache entry '" + key + "'");
        out << data;
    }
    std::ofstream metaout(meta);
    metaout << "fnv64 " << std::hex << fnv64(data) << "\n";
}

MetricSpec resolve_metric(const RunConfig& config) {
    const std::string& src = config.metric;
    if (src.rfind("builtin:", 0) == 0) {
        std::string name = src.substr(8);
        if (name != "zipoy-voorhees")
            throw ConfigError("unknown builtin metric '" + name + "' (have: zipoy-voorhees)");
        return zipoy_voorhees({config.delta});
    }
    if (src.rfind("file:", 0) == 0) return load_metric_file(src.substr(5));
    return load_metric_file(src);
}

namespace {

// When the requested point hits a pole, propose nearby regular points.
std::string suggest_points(const MetricSpec& m, const InverseMetric& inv, const Rational& x0,
                           const Rational& y0) {
    std::vector<std::pair<Rational, Rational>> candidates = {
        {x0 + Rational(1, 7), y0},          {x0, y0 + Rational(1, 7)},
        {x0 + Rational(1, 11), y0 + Rational(1, 13)}, {Rational(1, 2), Rational(2)},
        {Rational(1, 3), Rational(3)},
    };
    for (const auto& [cx, cy] : candidates) {
        try {
            m.check_point(cx, cy);
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j)
                    if (!inv.g_upper[i][j].is_zero()) inv.g_upper[i][j].evaluate({cx, cy});
            return "try --point " + cx.str() + "," + cy.str();
        } catch (const Error&) {
        }
    }
    return "choose a point off the singular locus";
}

void run_parity(const RunConfig& config, const Hamiltonian& h,
                const LinearPDESystem& sys, uint64_t metric_hash,
                const std::function<void(const std::string&)>& log, Report& report) {
    Parity parity = sys.parity == SystemParity::Odd ? Parity::Odd : Parity::Even;
    int n_max = config.effective_max_prolong();

    ParityResult pr;
    pr.parity = parity;

    pr.finite_type = finite_type_level(sys, config.x0, config.y0, n_max);
    if (config.flat_crosscheck) {
        MetricSpec flat = zipoy_voorhees({0});
        Hamiltonian hf = hamiltonian(flat, invert(flat));
        LinearPDESystem all = poisson_bracket_system(hf, config.degree);
        auto [fodd, feven] = split_parity(all);
        FiniteTypeReport fr = finite_type_level(parity == Parity::Odd ? fodd : feven, config.x0,
                                                config.y0, n_max);
        pr.flat_ell = fr.ell;
    }

    TrivialBasis basis = trivial_basis(config.degree, parity, h);

    DeltaTableOptions opt;
    opt.n_max = n_max;
    opt.full_table = config.full_table;
    opt.method = config.rank_method;
    opt.prime_count = config.prime_count;
    opt.prime_seed = config.prime_seed;
    if (config.progress && log) opt.progress = log;

    std::optional<MatrixCache> cache;
    std::string cache_dir = config.cache_dir;
    if (cache_dir.empty()) {
        if (const char* env = std::getenv(kCacheEnvVar)) cache_dir = env;
    }
    if (!cache_dir.empty()) cache.emplace(cache_dir);

    std::string export_dir = config.emit_matrix_dir;
    auto export_matrix = [&](int n, const SparseRationalMatrix& m) {
        if (export_dir.empty()) return;
        fs::create_directories(export_dir);
        fs::path p = fs::path(export_dir) / ("A_" + std::string(parity_name(parity)) + "_n" +
                                             std::to_string(n) + ".mtx");
        save_triplets(m, p.string());
    };

    if (cache || !export_dir.empty()) {
        opt.load_cached = [&, metric_hash](int n) -> std::optional<AssembledMatrix> {
            if (!cache) return std::nullopt;
            std::string key =
                MatrixCache::key(metric_hash, config.degree, parity, n, config.x0, config.y0);
            std::optional<SparseRationalMatrix> m;
            try {
                m = cache->load(key);
            } catch (const CacheError& e) {
                if (log) log(std::string("[cache] ") + e.what() + "; recomputing");
                return std::nullopt;
            }
            if (!m) return std::nullopt;
            AssembledMatrix am;
            am.mat = std::move(*m);
            am.level = n;
            am.num_unknowns = sys.unknowns.size();
            am.x0 = config.x0;
            am.y0 = config.y0;
            export_matrix(n, am.mat);
            if (log) log("[cache] level " + std::to_string(n) + " loaded (" + key + ")");
            return am;
        };
        opt.store_cached = [&, metric_hash](int n, const AssembledMatrix& am) {
            if (cache) {
                std::string key =
                    MatrixCache::key(metric_hash, config.degree, parity, n, config.x0, config.y0);
                cache->store(key, am.mat);
            }
            export_matrix(n, am.mat);
        };
    }

    pr.table = delta_table(sys, basis, config.x0, config.y0, opt);

    // Counting-convention flag for the degree-6 odd endgame: the 1680x1440
    // full-rank level sits at n = 6 under the formulas rows = E*C(n+2,2),
    // dim(u) = m*C(n+3,2); tabulations using a shifted convention print the
    // same column under n = 5. Report both honest n = 5 and n = 6 rows when
    // the full table was requested.
    if (parity == Parity::Odd && config.degree == 6 && !pr.table.rows.empty()) {
        const DeltaRow& last = pr.table.rows.back();
        if (last.delta == 0 && last.num_equations == 1680 && last.dim_u == 1440) {
            pr.table.notes.push_back(
                "the Delta = 0 level (1680 equations, 1440 jets, rank 1440) is n = " +
                std::to_string(last.n) +
                " by the counting formulas rows = E*C(n+2,2), dim(u) = m*C(n+3,2); tabulations "
                "using a shifted level convention print this column under n = " +
                std::to_string(last.n - 1));
        }
    }

    pr.verdict = make_verdict(pr.table, pr.finite_type);
    if (pr.verdict.outcome == Outcome::CandidateKernel)
        pr.table.notes.push_back(
            "the trivial space accounts for polynomials in H, p_phi, p_t only; metrics with "
            "additional Killing structure have larger trivial families, whose members appear "
            "here among the candidates");
    report.parity_results.push_back(std::move(pr));
}

}  // namespace

Report run(const RunConfig& config, const std::function<void(const std::string&)>& log) {
    auto t0 = std::chrono::steady_clock::now();

    if (config.degree < 1) throw ConfigError("degree must be at least 1");
    if (config.degree > config.degree_cap)
        throw ConfigError("degree " + std::to_string(config.degree) +
                          " exceeds the configured cap of " + std::to_string(config.degree_cap) +
                          "; raise --degree-cap only with the memory budget to match");
    if (config.prime_count < 1) throw ConfigError("prime count must be at least 1");

    MetricSpec metric = resolve_metric(config);
    metric.validate();
    metric.check_point(config.x0, config.y0);

    InverseMetric inv = invert(metric);
    try {
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                if (!inv.g_upper[i][j].is_zero()) inv.g_upper[i][j].evaluate({config.x0, config.y0});
    } catch (const DenominatorVanishes& e) {
        throw SingularPointError(std::string("inverse metric has a pole at the evaluation point (") +
                                 e.polynomial + " = 0); " +
                                 suggest_points(metric, inv, config.x0, config.y0));
    }

    Hamiltonian h = hamiltonian(metric, inv);
    if (!h.poly.is_even_in_cyclic_momenta())
        throw ConfigError("Hamiltonian mixes base and cyclic momenta; the parity decoupling "
                          "needs a block-diagonal metric");

    // Rough memory estimate for the modular elimination of the largest level.
    {
        int n = config.effective_max_prolong();
        size_t m_unknowns = enumerate_ansatz(config.degree).size();
        size_t rows = multi_index_count(n) * (enumerate_ansatz(config.degree + 1).size() / 2 + 1);
        size_t cols = jet_dimension(m_unknowns, n);
        double mb = static_cast<double>(rows) * cols * 8.0 / (1024 * 1024);
        if (log && mb > 256)
            log("[info] largest modular elimination approx " + std::to_string(rows) + " x " +
                std::to_string(cols) + " (" + std::to_string(static_cast<int>(mb)) + " MB per prime)");
    }

    LinearPDESystem full = poisson_bracket_system(h, config.degree);
    auto [odd, even] = split_parity(full);

    Report report;
    report.version = kVersion;
    report.config = config;
    report.metric_name = metric.name;
    report.metric_hash = fnv64(metric.canonical_text());

    if (config.parity == ParitySelection::Odd || config.parity == ParitySelection::Both)
        run_parity(config, h, odd, report.metric_hash, log, report);
    if (config.parity == ParitySelection::Even || config.parity == ParitySelection::Both)
        run_parity(config, h, even, report.metric_hash, log, report);

    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace kipp
