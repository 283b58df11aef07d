#include "pde.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "errors.hpp"

namespace kipp {

std::vector<MomExp> enumerate_ansatz(int degree) {
    if (degree < 1) throw ConfigError("ansatz degree must be at least 1");
    std::vector<MomExp> out;
    for (int i = degree; i >= 0; --i)
        for (int j = degree - i; j >= 0; --j)
            for (int k = degree - i - j; k >= 0; --k) out.push_back({i, j, k, degree - i - j - k});
    std::sort(out.begin(), out.end(), MomExpGrlexDesc{});
    return out;
}

LinearPDESystem poisson_bracket_system(const Hamiltonian& h, int degree) {
    const auto base = h.base_coords();
    for (const auto& [e, c] : h.poly.terms()) {
        for (size_t v = 0; v < c.vars().size(); ++v) {
            if (c.vars()[v] != base[0] && c.vars()[v] != base[1] &&
                (c.num().depends_on(v) || c.den().depends_on(v)))
                throw ConfigError("Hamiltonian coefficient depends on cyclic coordinate '" +
                                  c.vars()[v] + "'");
        }
    }

    LinearPDESystem s;
    s.degree = degree;
    s.parity = SystemParity::Mixed;
    s.base_coords = base;
    std::vector<MomExp> ansatz = enumerate_ansatz(degree);
    s.unknowns.reserve(ansatz.size());
    for (const MomExp& e : ansatz) s.unknowns.push_back({e, parity_of(e)});

    // tag -> (unknown, deriv) -> coefficient
    std::map<MomExp, std::map<std::pair<int, int>, RationalFunction>, MomExpGrlexDesc> rows;

    for (size_t u = 0; u < ansatz.size(); ++u) {
        const MomExp& mu = ansatz[u];
        for (int q = 0; q < 2; ++q) {  // q = 0 -> x, 1 -> y
            // dH/dq * dI/dp_q : multiplies the undifferentiated unknown
            if (mu[q] >= 1) {
                MomExp dmu = mu;
                dmu[q] -= 1;
                for (const auto& [he, hc] : h.poly.terms()) {
                    RationalFunction dq_hc = hc.derivative(base[q]);
                    if (dq_hc.is_zero()) continue;
                    MomExp tag{dmu[0] + he[0], dmu[1] + he[1], dmu[2] + he[2], dmu[3] + he[3]};
                    rows[tag][{static_cast<int>(u), 0}] += dq_hc.scaled(Rational(mu[q]));
                }
            }
            // - dI/dq * dH/dp_q : multiplies the q-derivative of the unknown
            for (const auto& [he, hc] : h.poly.terms()) {
                if (he[q] == 0) continue;
                MomExp dhe = he;
                dhe[q] -= 1;
                MomExp tag{mu[0] + dhe[0], mu[1] + dhe[1], mu[2] + dhe[2], mu[3] + dhe[3]};
                rows[tag][{static_cast<int>(u), q + 1}] += -hc.scaled(Rational(he[q]));
            }
        }
    }

    // Materialize every momentum monomial of degree+1 so the equation count
    // is exactly C(degree+4, 3) regardless of vanishing coefficients.
    for (const MomExp& tag : enumerate_ansatz(degree + 1)) {
        PDEEquation eq;
        eq.tag = tag;
        auto it = rows.find(tag);
        if (it != rows.end()) {
            for (auto& [key, coeff] : it->second) {
                if (coeff.is_zero()) continue;
                eq.terms.push_back({key.first, static_cast<Deriv>(key.second), coeff});
            }
        }
        s.equations.push_back(std::move(eq));
    }
    return s;
}

std::pair<LinearPDESystem, LinearPDESystem> split_parity(const LinearPDESystem& s) {
    LinearPDESystem odd, even;
    odd.degree = even.degree = s.degree;
    odd.parity = SystemParity::Odd;
    even.parity = SystemParity::Even;
    odd.base_coords = even.base_coords = s.base_coords;

    std::vector<int> remap(s.unknowns.size(), -1);
    for (size_t u = 0; u < s.unknowns.size(); ++u) {
        LinearPDESystem& dst = s.unknowns[u].parity == Parity::Odd ? odd : even;
        remap[u] = static_cast<int>(dst.unknowns.size());
        dst.unknowns.push_back(s.unknowns[u]);
    }
    for (const PDEEquation& eq : s.equations) {
        Parity p = parity_of(eq.tag);
        LinearPDESystem& dst = p == Parity::Odd ? odd : even;
        PDEEquation ne;
        ne.tag = eq.tag;
        for (const PDETerm& t : eq.terms) {
            if (s.unknowns[t.unknown].parity != p)
                throw Error("parity mixing in equation [" + unknown_label(eq.tag) +
                            "]: unknown " + unknown_label(s.unknowns[t.unknown].index) +
                            " has the opposite parity; the metric is not block-diagonal in "
                            "(base, cyclic) coordinates");
            ne.terms.push_back({remap[t.unknown], t.deriv, t.coeff});
        }
        dst.equations.push_back(std::move(ne));
    }
    return {std::move(odd), std::move(even)};
}

std::vector<RationalFunction> substitute(const LinearPDESystem& s,
                                         const std::vector<RationalFunction>& values) {
    if (values.size() != s.unknowns.size())
        throw Error("substitute: expected " + std::to_string(s.unknowns.size()) + " values");
    std::vector<RationalFunction> residuals;
    residuals.reserve(s.equations.size());
    for (const PDEEquation& eq : s.equations) {
        RationalFunction acc;
        for (const PDETerm& t : eq.terms) {
            const RationalFunction& v = values[t.unknown];
            switch (t.deriv) {
                case Deriv::Value: acc += t.coeff * v; break;
                case Deriv::Dx: acc += t.coeff * v.derivative(s.base_coords[0]); break;
                case Deriv::Dy: acc += t.coeff * v.derivative(s.base_coords[1]); break;
            }
        }
        residuals.push_back(std::move(acc));
    }
    return residuals;
}

std::vector<RationalFunction> coefficients_over(const LinearPDESystem& s,
                                                const MomentumPolynomial& p) {
    std::vector<RationalFunction> out(s.unknowns.size());
    std::map<MomExp, int, MomExpGrlexDesc> where;
    for (size_t u = 0; u < s.unknowns.size(); ++u) where[s.unknowns[u].index] = static_cast<int>(u);
    for (const auto& [e, c] : p.terms()) {
        auto it = where.find(e);
        if (it == where.end())
            throw Error("momentum polynomial has monomial " + unknown_label(e) +
                        " outside the system's ansatz");
        out[it->second] = c;
    }
    return out;
}

std::string unknown_label(const MomExp& e) {
    return std::to_string(e[0]) + std::to_string(e[1]) + std::to_string(e[2]) +
           std::to_string(e[3]);
}

void dump_system(const LinearPDESystem& s, std::ostream& os) {
    static const char* momentum_names[4] = {"px", "py", "pphi", "pt"};
    for (const PDEEquation& eq : s.equations) {
        os << "[";
        bool first = true;
        for (int a = 0; a < 4; ++a) {
            if (!eq.tag[a]) continue;
            if (!first) os << "*";
            os << momentum_names[a];
            if (eq.tag[a] > 1) os << "^" << eq.tag[a];
            first = false;
        }
        os << "]";
        if (eq.terms.empty()) {
            os << " 0\n";
            continue;
        }
        for (size_t i = 0; i < eq.terms.size(); ++i) {
            const PDETerm& t = eq.terms[i];
            os << (i ? " + " : " ");
            os << "(" << t.coeff.str() << ")*";
            switch (t.deriv) {
                case Deriv::Value: break;
                case Deriv::Dx: os << "dx:"; break;
                case Deriv::Dy: os << "dy:"; break;
            }
            os << "I_" << unknown_label(s.unknowns[t.unknown].index);
        }
        os << "\n";
    }
}

}  // namespace kipp
