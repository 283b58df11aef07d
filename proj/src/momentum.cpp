#include "momentum.hpp"

#include <sstream>

namespace kipp {

MomentumPolynomial MomentumPolynomial::momentum(int axis) {
    MomExp e{0, 0, 0, 0};
    e[axis] = 1;
    return term(e, RationalFunction(Rational(1)));
}

MomentumPolynomial MomentumPolynomial::term(const MomExp& e, RationalFunction coeff) {
    MomentumPolynomial p;
    if (!coeff.is_zero()) p.terms_.emplace(e, std::move(coeff));
    return p;
}

void MomentumPolynomial::add_term(const MomExp& e, const RationalFunction& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MomentumPolynomial operator+(const MomentumPolynomial& a, const MomentumPolynomial& b) {
    MomentumPolynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

MomentumPolynomial operator-(const MomentumPolynomial& a, const MomentumPolynomial& b) {
    MomentumPolynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

MomentumPolynomial operator*(const MomentumPolynomial& a, const MomentumPolynomial& b) {
    MomentumPolynomial r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MomExp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MomentumPolynomial MomentumPolynomial::scaled(const RationalFunction& c) const {
    MomentumPolynomial r;
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

MomentumPolynomial MomentumPolynomial::pow(const MomentumPolynomial& a, unsigned e) {
    MomentumPolynomial r = term({0, 0, 0, 0}, RationalFunction(Rational(1)));
    MomentumPolynomial base = a;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

MomentumPolynomial MomentumPolynomial::momentum_derivative(int axis) const {
    MomentumPolynomial r;
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        MomExp ne = e;
        ne[axis] -= 1;
        r.add_term(ne, c.scaled(Rational(e[axis])));
    }
    return r;
}

MomentumPolynomial MomentumPolynomial::coordinate_derivative(const std::string& var) const {
    MomentumPolynomial r;
    for (const auto& [e, c] : terms_) r.add_term(e, c.derivative(var));
    return r;
}

Rational MomentumPolynomial::evaluate(const std::vector<Rational>& base_point,
                                      const std::array<Rational, 4>& momenta) const {
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c.evaluate(base_point);
        for (int a = 0; a < 4; ++a)
            for (int k = 0; k < e[a]; ++k) t *= momenta[a];
        sum += t;
    }
    return sum;
}

bool MomentumPolynomial::is_even_in_cyclic_momenta() const {
    for (const auto& [e, c] : terms_)
        if ((e[2] + e[3]) % 2) return false;
    return true;
}

std::string MomentumPolynomial::str(const std::array<std::string, 4>& momentum_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int a = 0; a < 4; ++a) {
            if (!e[a]) continue;
            os << "*" << momentum_names[a];
            if (e[a] > 1) os << "^" << e[a];
        }
    }
    return os.str();
}

MomentumPolynomial poisson_bracket(const MomentumPolynomial& f, const MomentumPolynomial& g,
                                   const std::array<std::string, 2>& coords) {
    MomentumPolynomial r;
    for (int q = 0; q < 2; ++q) {
        r += f.coordinate_derivative(coords[q]) * g.momentum_derivative(q) -
             f.momentum_derivative(q) * g.coordinate_derivative(coords[q]);
    }
    return r;
}

}  // namespace kipp
