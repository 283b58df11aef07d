#include "analysis.hpp"

#include <chrono>
#include <sstream>

#include "errors.hpp"
#include "modular.hpp"

namespace kipp {

TrivialBasis trivial_basis(int degree, Parity parity, const Hamiltonian& h) {
    if (degree < 1) throw ConfigError("trivial basis degree must be at least 1");
    TrivialBasis out;
    out.degree = degree;
    out.parity = parity;

    std::vector<MomentumPolynomial> h_pow{
        MomentumPolynomial::term({0, 0, 0, 0}, RationalFunction(Rational(1)))};
    for (int a = 1; 2 * a <= degree; ++a) h_pow.push_back(h_pow.back() * h.poly);

    for (int a = degree / 2; a >= 0; --a) {
        int rest = degree - 2 * a;
        if ((rest % 2 == 0) != (parity == Parity::Even)) continue;
        for (int b = rest; b >= 0; --b) {
            int c = rest - b;
            MomentumPolynomial mono =
                MomentumPolynomial::term({0, 0, b, c}, RationalFunction(Rational(1)));
            out.generators.push_back(h_pow[a] * mono);
        }
    }
    return out;
}

std::vector<std::vector<Rational>> trivial_jet_vectors(const TrivialBasis& basis,
                                                       const LinearPDESystem& s,
                                                       const Rational& x0, const Rational& y0,
                                                       int n) {
    size_t m = s.unknowns.size();
    size_t dim = jet_dimension(m, n);
    std::vector<std::vector<Rational>> out;
    out.reserve(basis.generators.size());
    auto midx = multi_indices_upto(n + 1);

    for (const MomentumPolynomial& gen : basis.generators) {
        std::vector<RationalFunction> coeffs = coefficients_over(s, gen);
        std::vector<Rational> v(dim, Rational(0));
        for (size_t u = 0; u < m; ++u) {
            if (coeffs[u].is_zero()) continue;
            JetTable jt = expand_jet(coeffs[u], s.base_coords[0], s.base_coords[1], x0, y0, n + 1);
            for (const auto& [a, b] : midx) {
                Rational val = jt.derivative(a, b);
                if (!val.is_zero()) v[multi_index_position(a, b) * m + u] = std::move(val);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

std::string row_progress(Parity parity, const DeltaRow& row, size_t nnz, size_t bits, double secs) {
    std::ostringstream os;
    os << "[" << parity_name(parity) << "] n=" << row.n << ": eqns=" << row.num_equations
       << " dim(u)=" << row.dim_u << " nnz=" << nnz << " max_entry_bits=" << bits
       << " rank=" << row.rank.rank << (row.rank.certified_exact ? " (certified)" : " (modular)")
       << " delta=" << row.delta << " [" << secs << "s]";
    return os.str();
}

}  // namespace

DeltaTable delta_table(const LinearPDESystem& s, const TrivialBasis& trivial, const Rational& x0,
                       const Rational& y0, const DeltaTableOptions& opt) {
    DeltaTable out;
    out.parity = s.parity == SystemParity::Odd ? Parity::Odd : Parity::Even;
    out.degree = s.degree;

    uint64_t seed = opt.prime_seed ? opt.prime_seed : kDefaultPrimeSeed;

    for (int n = 0; n <= opt.n_max; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        AssembledMatrix am;
        bool from_cache = false;
        if (opt.load_cached) {
            if (auto cached = opt.load_cached(n)) {
                am = std::move(*cached);
                from_cache = true;
            }
        }
        if (!from_cache) {
            ProlongedSystem ps(s, n);
            am = assemble(ps, x0, y0);
            if (opt.store_cached) opt.store_cached(n, am);
        }

        // Trivial generators must be annihilated exactly at every level; they
        // are both an end-to-end consistency check and the rank certificate.
        std::vector<std::vector<Rational>> triv = trivial_jet_vectors(trivial, s, x0, y0, n);
        for (size_t g = 0; g < triv.size(); ++g) {
            std::vector<Rational> residual = mat_vec(am.mat, triv[g]);
            for (const Rational& r : residual)
                if (!r.is_zero())
                    throw Error("trivial integral jet vector " + std::to_string(g) +
                                " is not annihilated by the assembled matrix at level " +
                                std::to_string(n) + "; construction fault");
        }
        size_t trivial_dim = rank_of_vectors(triv);
        out.trivial_dim = trivial_dim;

        std::vector<uint64_t> primes;
        if (opt.method != RankMethod::Exact) primes = draw_primes(am.mat, opt.prime_count, seed);

        DeltaRow row;
        row.n = n;
        row.num_equations = am.mat.rows();
        row.dim_u = am.mat.cols();
        row.rank = rank_with_certificate(am.mat, opt.method, primes, triv);
        row.delta = static_cast<long>(row.dim_u) - static_cast<long>(row.rank.rank) -
                    static_cast<long>(trivial_dim);
        if (row.delta < 0)
            throw Error("negative delta at level " + std::to_string(n) +
                        "; rank exceeds dim(u) - trivial_dim, construction fault");

        row.nnz = am.mat.nnz();
        row.max_entry_bits = am.mat.max_entry_bits();
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt.progress)
            opt.progress(row_progress(out.parity, row, row.nnz, row.max_entry_bits, row.seconds));

        bool stop = row.delta == 0 && !opt.full_table;
        bool last = stop || n == opt.n_max;
        if (last && row.delta > 0) {
            if (am.mat.cols() <= opt.kernel_sample_max_cols) {
                out.candidate_kernel = kernel_basis(am.mat);
            } else {
                out.notes.push_back("kernel sample vectors skipped: matrix too large (" +
                                    std::to_string(am.mat.cols()) + " columns)");
            }
        }
        out.rows.push_back(std::move(row));
        if (stop) {
            out.aborted_early = n < opt.n_max;
            break;
        }
    }
    return out;
}

FiniteTypeReport finite_type_level(const LinearPDESystem& s, const Rational& x0, const Rational& y0,
                                   int n_max) {
    FiniteTypeReport out;
    out.parity = s.parity == SystemParity::Odd ? Parity::Odd : Parity::Even;
    for (int n = 0; n <= n_max; ++n) {
        SymbolMatrix sm = symbol_assemble(s, n, x0, y0);
        FiniteTypeRow row;
        row.n = n;
        row.num_equations = sm.mat.rows();
        row.dim_v = sm.mat.cols();
        row.rank = rank_exact(sm.mat).rank;
        row.delta = static_cast<long>(row.dim_v) - static_cast<long>(row.rank);
        out.rows.push_back(row);
        if (row.delta == 0) {
            out.ell = n;
            break;
        }
    }
    return out;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::NoNontrivialIntegral: return "NoNontrivialIntegral";
        case Outcome::CandidateKernel: return "CandidateKernel";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict make_verdict(const DeltaTable& table, const FiniteTypeReport& ftype) {
    Verdict v;
    v.ell = ftype.ell;
    if (!ftype.ell) {
        v.outcome = Outcome::Inconclusive;
        v.reason = "finite type level not reached within the prolongation range";
        return v;
    }
    int ell = *ftype.ell;

    for (const DeltaRow& row : table.rows) {
        if (row.n >= ell && row.delta == 0 && row.rank.certified_exact) {
            v.outcome = Outcome::NoNontrivialIntegral;
            v.decisive_n = row.n;
            v.certified = true;
            v.reason = "certified delta = 0 at n = " + std::to_string(row.n) +
                       " >= ell = " + std::to_string(ell) + "; every solution jet is trivial";
            return v;
        }
    }
    for (const DeltaRow& row : table.rows) {
        if (row.n >= ell && row.delta == 0 && !row.rank.certified_exact) {
            v.outcome = Outcome::Inconclusive;
            v.decisive_n = row.n;
            v.reason = "delta = 0 at n = " + std::to_string(row.n) +
                       " but the rank is not certified; rerun with --rank-method exact or both";
            return v;
        }
    }

    if (table.rows.size() >= 2) {
        const DeltaRow& last = table.rows.back();
        const DeltaRow& prev = table.rows[table.rows.size() - 2];
        if (last.n >= ell && prev.n >= ell && last.delta == prev.delta && last.delta > 0) {
            v.outcome = Outcome::CandidateKernel;
            v.kernel_excess = last.delta;
            v.decisive_n = last.n;
            v.reason = "delta stabilized at " + std::to_string(last.delta) + " for n >= " +
                       std::to_string(prev.n) +
                       "; kernel vectors beyond the trivial space are candidates only, existence "
                       "is not concluded from rank at one point";
            return v;
        }
    }

    v.outcome = Outcome::Inconclusive;
    v.reason = "delta neither reached 0 nor stabilized above it within the prolongation range";
    return v;
}

}  // namespace kipp
