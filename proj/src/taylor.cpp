#include "taylor.hpp"

#include <stdexcept>

#include "errors.hpp"

namespace kipp {

namespace {

// Truncated triangular series ops; storage layout matches JetTable::index.
using Series = std::vector<Rational>;

Series mul(const Series& a, const Series& b, int order) {
    Series r(JetTable::size_for(order), Rational(0));
    for (int ga = 0; ga <= order; ++ga) {
        for (int ba = 0; ba <= ga; ++ba) {
            const Rational& ca = a[JetTable::index(ga - ba, ba)];
            if (ca.is_zero()) continue;
            for (int gb = 0; gb + ga <= order; ++gb) {
                for (int bb = 0; bb <= gb; ++bb) {
                    const Rational& cb = b[JetTable::index(gb - bb, bb)];
                    if (cb.is_zero()) continue;
                    r[JetTable::index(ga - ba + gb - bb, ba + bb)] += ca * cb;
                }
            }
        }
    }
    return r;
}

// Reciprocal of a series with nonzero constant term, grade by grade.
Series reciprocal(const Series& d, int order) {
    Series r(JetTable::size_for(order), Rational(0));
    Rational inv0 = d[0].inverse();
    r[0] = inv0;
    for (int g = 1; g <= order; ++g) {
        for (int b = 0; b <= g; ++b) {
            int a = g - b;
            // (d * r)_{ab} = 0  for (a,b) != (0,0)
            Rational acc(0);
            for (int u = 0; u <= a; ++u) {
                for (int v = 0; v <= b; ++v) {
                    if (u == a && v == b) continue;  // that is the unknown r_{ab} term
                    const Rational& dc = d[JetTable::index(a - u, b - v)];
                    if (dc.is_zero()) continue;
                    acc += dc * r[JetTable::index(u, v)];
                }
            }
            r[JetTable::index(a, b)] = -acc * inv0;
        }
    }
    return r;
}

// Expands a polynomial at (x0+s, y0+t), truncated to the given total order.
Series shift_poly(const Polynomial& p, size_t xi, size_t yi, const Rational& x0, const Rational& y0,
                  int order) {
    Series out(JetTable::size_for(order), Rational(0));
    // Binomial table up to the maximum exponent seen.
    int max_e = 0;
    for (const auto& [e, c] : p.terms()) {
        if (xi != Polynomial::npos) max_e = std::max(max_e, static_cast<int>(e[xi]));
        if (yi != Polynomial::npos) max_e = std::max(max_e, static_cast<int>(e[yi]));
    }
    std::vector<std::vector<Rational>> binom(max_e + 1);
    for (int n = 0; n <= max_e; ++n) {
        binom[n].assign(n + 1, Rational(1));
        for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    std::vector<Rational> xpow{Rational(1)}, ypow{Rational(1)};
    auto power = [](std::vector<Rational>& cache, const Rational& base, int e) -> const Rational& {
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };
    for (const auto& [e, c] : p.terms()) {
        int ex = xi == Polynomial::npos ? 0 : static_cast<int>(e[xi]);
        int ey = yi == Polynomial::npos ? 0 : static_cast<int>(e[yi]);
        // (x0+s)^ex (y0+t)^ey = sum binom(ex,a) x0^{ex-a} s^a * binom(ey,b) y0^{ey-b} t^b
        for (int a = 0; a <= std::min(ex, order); ++a) {
            Rational fa = c * binom[ex][a] * power(xpow, x0, ex - a);
            for (int b = 0; b <= std::min(ey, order - a); ++b) {
                out[JetTable::index(a, b)] += fa * binom[ey][b] * power(ypow, y0, ey - b);
            }
        }
    }
    return out;
}

}  // namespace

Rational JetTable::derivative(int a, int b) const {
    if (a + b > order_) throw std::out_of_range("jet order exceeded");
    Rational f(1);
    for (int k = 2; k <= a; ++k) f *= Rational(k);
    for (int k = 2; k <= b; ++k) f *= Rational(k);
    return taylor_[index(a, b)] * f;
}

JetTable expand_jet(const RationalFunction& f, const std::string& x_name, const std::string& y_name,
                    const Rational& x0, const Rational& y0, int order) {
    const auto& vars = f.vars();
    size_t xi = f.num().var_index(x_name);
    size_t yi = f.num().var_index(y_name);
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] != x_name && vars[i] != y_name && (f.num().depends_on(i) || f.den().depends_on(i)))
            throw std::invalid_argument("jet expansion over unexpected variable '" + vars[i] + "'");
    }
    Series num = shift_poly(f.num(), xi, yi, x0, y0, order);
    Series den = shift_poly(f.den(), xi, yi, x0, y0, order);
    if (den[0].is_zero()) throw DenominatorVanishes(f.den().str());
    return JetTable(order, mul(num, reciprocal(den, order), order));
}

}  // namespace kipp
