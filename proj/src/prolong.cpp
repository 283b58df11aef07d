#include "prolong.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"

namespace kipp {

std::vector<MultiIndex> multi_indices_upto(int n) {
    std::vector<MultiIndex> out;
    out.reserve(multi_index_count(n));
    for (int g = 0; g <= n; ++g)
        for (int a = g; a >= 0; --a) out.emplace_back(a, g - a);
    return out;
}

size_t multi_index_count(int n) {
    return static_cast<size_t>(n + 1) * (n + 2) / 2;
}

size_t multi_index_position(int a, int b) {
    int g = a + b;
    return static_cast<size_t>(g) * (g + 1) / 2 + static_cast<size_t>(g - a);
}

size_t jet_dimension(size_t num_unknowns, int n) {
    return num_unknowns * multi_index_count(n + 1);
}

ProlongedSystem::ProlongedSystem(const LinearPDESystem& base, int level)
    : base_(base), level_(level) {
    if (level < 0) throw ConfigError("prolongation level must be non-negative");
}

std::map<std::pair<int, MultiIndex>, RationalFunction> ProlongedSystem::symbolic_row(size_t eq,
                                                                                     int c,
                                                                                     int d) const {
    const auto& x = base_.base_coords[0];
    const auto& y = base_.base_coords[1];
    std::map<std::pair<int, MultiIndex>, RationalFunction> row;
    for (const PDETerm& t : base_.equations[eq].terms) {
        // Leibniz: d^{(c,d)}(f * Du) = sum binom(c,a) binom(d,b) d^{(a,b)}f * d^{(c-a,d-b)}(Du)
        RationalFunction fx = t.coeff;
        for (int a = 0; a <= c; ++a) {
            RationalFunction fy = fx;
            for (int b = 0; b <= d; ++b) {
                Rational bc(1);
                for (int k = 0; k < a; ++k) bc *= Rational(c - k, k + 1);
                for (int k = 0; k < b; ++k) bc *= Rational(d - k, k + 1);
                int ja = c - a, jb = d - b;
                switch (t.deriv) {
                    case Deriv::Value: break;
                    case Deriv::Dx: ja += 1; break;
                    case Deriv::Dy: jb += 1; break;
                }
                auto key = std::make_pair(t.unknown, MultiIndex{ja, jb});
                auto [it, fresh] = row.emplace(key, fy.scaled(bc));
                if (!fresh) it->second += fy.scaled(bc);
                fy = fy.derivative(y);
                if (fy.is_zero() && b + 1 <= d) {
                    // remaining y-derivatives vanish
                    break;
                }
            }
            fx = fx.derivative(x);
            if (fx.is_zero() && a + 1 <= c) break;
        }
    }
    for (auto it = row.begin(); it != row.end();) {
        if (it->second.is_zero())
            it = row.erase(it);
        else
            ++it;
    }
    return row;
}

namespace {

// Cache of jet tables keyed by the canonical text of the coefficient.
class JetCache {
public:
    JetCache(const std::array<std::string, 2>& coords, const Rational& x0, const Rational& y0,
             int order)
        : coords_(coords), x0_(x0), y0_(y0), order_(order) {}

    const JetTable& get(const RationalFunction& f) {
        std::string key = f.str();
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        JetTable j = expand_jet(f, coords_[0], coords_[1], x0_, y0_, order_);
        return cache_.emplace(std::move(key), std::move(j)).first->second;
    }

private:
    std::array<std::string, 2> coords_;
    Rational x0_, y0_;
    int order_;
    std::unordered_map<std::string, JetTable> cache_;
};

std::vector<std::vector<Rational>> binomial_table(int n) {
    std::vector<std::vector<Rational>> b(n + 1);
    for (int i = 0; i <= n; ++i) {
        b[i].assign(i + 1, Rational(1));
        for (int k = 1; k < i; ++k) b[i][k] = b[i - 1][k - 1] + b[i - 1][k];
    }
    return b;
}

}  // namespace

JetIndex AssembledMatrix::jet_of_column(size_t col) const {
    size_t pos = col / num_unknowns;
    int u = static_cast<int>(col % num_unknowns);
    // invert multi_index_position: find the grade g containing pos
    int g = 0;
    while (static_cast<size_t>(g + 1) * (g + 2) / 2 <= pos) ++g;
    size_t base = static_cast<size_t>(g) * (g + 1) / 2;
    int a = g - static_cast<int>(pos - base);
    return JetIndex{u, a, g - a};
}

std::vector<JetIndex> AssembledMatrix::column_key() const {
    std::vector<JetIndex> out;
    out.reserve(mat.cols());
    for (const MultiIndex& mi : multi_indices_upto(level + 1))
        for (size_t u = 0; u < num_unknowns; ++u)
            out.push_back(JetIndex{static_cast<int>(u), mi.first, mi.second});
    return out;
}

AssembledMatrix assemble(const ProlongedSystem& ps, const Rational& x0, const Rational& y0) {
    const LinearPDESystem& s = ps.base();
    const int n = ps.level();
    AssembledMatrix out;
    out.level = n;
    out.num_unknowns = s.unknowns.size();
    out.x0 = x0;
    out.y0 = y0;
    out.mat = SparseRationalMatrix(ps.equation_count(), ps.jet_count());

    JetCache jets(s.base_coords, x0, y0, n);
    auto binom = binomial_table(n + 1);
    std::vector<MultiIndex> midx = multi_indices_upto(n);

    // Derivative values with factorials folded in: f^{(a,b)} = taylor * a! b!
    std::vector<Rational> fact(n + 2, Rational(1));
    for (int k = 1; k <= n + 1; ++k) fact[k] = fact[k - 1] * Rational(k);

    for (size_t mp = 0; mp < midx.size(); ++mp) {
        auto [c, d] = midx[mp];
        for (size_t e = 0; e < s.equations.size(); ++e) {
            size_t r = ps.row_of(mp, e);
            for (const PDETerm& t : s.equations[e].terms) {
                const JetTable& jt = jets.get(t.coeff);
                for (int a = 0; a <= c; ++a) {
                    for (int b = 0; b <= d; ++b) {
                        const Rational& tay = jt.taylor(a, b);
                        if (tay.is_zero()) continue;
                        Rational v = tay * fact[a] * fact[b] * binom[c][a] * binom[d][b];
                        int ja = c - a, jb = d - b;
                        switch (t.deriv) {
                            case Deriv::Value: break;
                            case Deriv::Dx: ja += 1; break;
                            case Deriv::Dy: jb += 1; break;
                        }
                        out.mat.add(r, out.column_of(t.unknown, ja, jb), v);
                    }
                }
            }
        }
    }
    out.mat.finalize();
    out.mat.clear_row_denominators();
    return out;
}

SymbolMatrix symbol_assemble(const LinearPDESystem& s, int n, const Rational& x0,
                             const Rational& y0) {
    SymbolMatrix out;
    out.level = n;
    out.num_unknowns = s.unknowns.size();

    // Value of every first-order coefficient at the point.
    JetCache jets(s.base_coords, x0, y0, 0);

    // Columns: jets of order exactly n+1, by descending x-order, unknown-minor.
    auto col_of = [&](int unknown, int a) {
        return static_cast<size_t>(n + 1 - a) * s.unknowns.size() + static_cast<size_t>(unknown);
    };

    std::vector<std::vector<SparseRationalMatrix::Entry>> rows;
    size_t raw = 0;
    // The y-order of the multi-index is n - c; only the x-order matters for
    // the top-order column of each term.
    for (int c = n; c >= 0; --c) {
        for (const PDEEquation& eq : s.equations) {
            std::map<size_t, Rational> row;
            for (const PDETerm& t : eq.terms) {
                if (t.deriv == Deriv::Value) continue;
                Rational v = jets.get(t.coeff).value();
                if (v.is_zero()) continue;
                size_t col = t.deriv == Deriv::Dx ? col_of(t.unknown, c + 1) : col_of(t.unknown, c);
                row[col] += v;
            }
            bool has_deriv = std::any_of(eq.terms.begin(), eq.terms.end(),
                                         [](const PDETerm& t) { return t.deriv != Deriv::Value; });
            if (has_deriv) ++raw;
            std::vector<SparseRationalMatrix::Entry> entries;
            for (const auto& [c2, v] : row)
                if (!v.is_zero()) entries.emplace_back(static_cast<uint32_t>(c2), v);
            if (!entries.empty()) rows.push_back(std::move(entries));
        }
    }
    out.raw_rows = raw;

    // Deduplicate proportional rows: normalize by the first entry.
    std::unordered_set<std::string> seen;
    std::vector<std::vector<SparseRationalMatrix::Entry>> kept;
    for (auto& row : rows) {
        Rational lead = row.front().second;
        std::string key;
        for (const auto& [c, v] : row) {
            key += std::to_string(c);
            key += ':';
            key += (v / lead).str();
            key += ';';
        }
        if (seen.insert(key).second) kept.push_back(std::move(row));
    }

    out.mat = SparseRationalMatrix(kept.size(), (static_cast<size_t>(n) + 2) * s.unknowns.size());
    for (size_t r = 0; r < kept.size(); ++r)
        for (const auto& [c, v] : kept[r]) out.mat.add(r, c, v);
    out.mat.finalize();
    return out;
}

}  // namespace kipp
