#include "geodesic.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace kipp {

namespace {

// Rational function compiled to double coefficient arrays for fast evaluation.
struct CompiledRF {
    struct Term {
        double c;
        uint32_t ex, ey;
    };
    std::vector<Term> num, den;

    static CompiledRF compile(const RationalFunction& f, const std::string& xn,
                              const std::string& yn) {
        CompiledRF out;
        auto pack = [&](const Polynomial& p, std::vector<Term>& dst) {
            size_t xi = p.var_index(xn), yi = p.var_index(yn);
            for (const auto& [e, c] : p.terms()) {
                Term t{c.to_double(), 0, 0};
                if (xi != Polynomial::npos) t.ex = e[xi];
                if (yi != Polynomial::npos) t.ey = e[yi];
                dst.push_back(t);
            }
        };
        pack(f.num(), out.num);
        pack(f.den(), out.den);
        return out;
    }

    double eval(double x, double y) const {
        auto sum = [&](const std::vector<Term>& ts) {
            double acc = 0;
            for (const Term& t : ts) {
                double v = t.c;
                for (uint32_t k = 0; k < t.ex; ++k) v *= x;
                for (uint32_t k = 0; k < t.ey; ++k) v *= y;
                acc += v;
            }
            return acc;
        };
        double d = sum(den);
        if (std::abs(d) < 1e-280 || !std::isfinite(d))
            throw DenominatorVanishes("(floating evaluation)");
        return sum(num) / d;
    }
};

}  // namespace

GeodesicResult geodesic_sanity(const MetricSpec& metric, const std::array<double, 8>& state0,
                               long steps, double step_size) {
    if (steps < 1) throw ConfigError("geodesic step count must be positive");
    InverseMetric inv = invert(metric);
    const std::string& xn = metric.coords[0];
    const std::string& yn = metric.coords[1];

    // g^{ab} and its x/y-derivatives, upper triangle only.
    struct Comp {
        int a, b;
        CompiledRF g, gx, gy;
    };
    std::vector<Comp> comps;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            if (inv.g_upper[a][b].is_zero()) continue;
            comps.push_back({a, b, CompiledRF::compile(inv.g_upper[a][b], xn, yn),
                             CompiledRF::compile(inv.g_upper[a][b].derivative(xn), xn, yn),
                             CompiledRF::compile(inv.g_upper[a][b].derivative(yn), xn, yn)});
        }

    // Locus polynomials compiled for crossing detection: a sign change of any
    // forbidden polynomial between steps means the trajectory crossed it.
    std::vector<CompiledRF> locus;
    for (const Polynomial& p : metric.forbidden)
        locus.push_back(CompiledRF::compile(RationalFunction(p), xn, yn));

    using State = std::array<double, 8>;
    auto hamiltonian_value = [&](const State& s) {
        double acc = 0;
        for (const Comp& c : comps) {
            double w = (c.a == c.b) ? 0.5 : 1.0;
            acc += w * c.g.eval(s[0], s[1]) * s[4 + c.a] * s[4 + c.b];
        }
        return acc;
    };
    auto locus_signs = [&](const State& s) {
        std::vector<int> signs;
        signs.reserve(locus.size());
        for (const CompiledRF& p : locus) {
            double v = p.eval(s[0], s[1]);
            if (std::abs(v) < 1e-12 || !std::isfinite(v))
                throw SingularPointError("state lies on the singular locus");
            signs.push_back(v > 0 ? 1 : -1);
        }
        return signs;
    };
    // dq^a = dH/dp_a = sum_b g^{ab} p_b ; dp_x = -dH/dx ; dp_y = -dH/dy ;
    // p_phi and p_t have identically zero right-hand sides.
    auto rhs = [&](const State& s, State& ds) {
        ds.fill(0.0);
        for (const Comp& c : comps) {
            double g = c.g.eval(s[0], s[1]);
            ds[c.a] += g * s[4 + c.b];
            if (c.a != c.b) ds[c.b] += g * s[4 + c.a];
            double w = (c.a == c.b) ? 0.5 : 1.0;
            double pp = w * s[4 + c.a] * s[4 + c.b];
            ds[4] -= c.gx.eval(s[0], s[1]) * pp;
            ds[5] -= c.gy.eval(s[0], s[1]) * pp;
        }
        ds[6] = 0.0;
        ds[7] = 0.0;
    };

    State s = state0;
    double h0 = 0;
    std::vector<int> signs0;
    try {
        h0 = hamiltonian_value(s);
        signs0 = locus_signs(s);
    } catch (const DenominatorVanishes&) {
        throw SingularPointError("initial state lies on the singular locus (step 0)");
    }
    double scale = std::max(std::abs(h0), 1e-12);
    GeodesicResult res;
    res.steps = steps;

    State k1, k2, k3, k4, tmp;
    for (long step = 0; step < steps; ++step) {
        try {
            rhs(s, k1);
            for (int i = 0; i < 8; ++i) tmp[i] = s[i] + 0.5 * step_size * k1[i];
            rhs(tmp, k2);
            for (int i = 0; i < 8; ++i) tmp[i] = s[i] + 0.5 * step_size * k2[i];
            rhs(tmp, k3);
            for (int i = 0; i < 8; ++i) tmp[i] = s[i] + step_size * k3[i];
            rhs(tmp, k4);
            for (int i = 0; i < 8; ++i)
                s[i] += step_size / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (locus_signs(s) != signs0)
                throw SingularPointError("trajectory crossed the singular locus");
            double h = hamiltonian_value(s);
            res.drift_h = std::max(res.drift_h, std::abs(h - h0) / scale);
        } catch (const SingularPointError&) {
            throw SingularPointError("trajectory hit the singular locus at step " +
                                     std::to_string(step));
        } catch (const DenominatorVanishes&) {
            throw SingularPointError("trajectory hit the singular locus at step " +
                                     std::to_string(step));
        }
        res.drift_pphi = std::max(res.drift_pphi, std::abs(s[6] - state0[6]));
        res.drift_pt = std::max(res.drift_pt, std::abs(s[7] - state0[7]));
    }
    return res;
}

}  // namespace kipp
