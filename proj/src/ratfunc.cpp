#include "ratfunc.hpp"

#include <ostream>
#include <stdexcept>

#include "errors.hpp"

namespace kipp {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator polynomial");
    normalize();
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(Rational(1), num_.vars())) {
    normalize();
}

RationalFunction::RationalFunction(const Rational& c, std::vector<std::string> vars)
    : num_(Polynomial::constant(c, vars)), den_(Polynomial::constant(Rational(1), std::move(vars))) {}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(Rational(1), den_.vars());
        num_ = Polynomial(den_.vars());
        return;
    }
    if (num_.vars() != den_.vars()) {
        // Align over the union so cancellation sees both sides.
        Polynomial sum = num_ + den_;  // cheap way to get the union ordering
        num_ = num_.with_vars(sum.vars());
        den_ = den_.with_vars(sum.vars());
    }
    if (!den_.is_constant()) {
        Polynomial g = Polynomial::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = Polynomial::div_exact(num_, g);
            den_ = Polynomial::div_exact(den_, g);
        }
    }
    Rational c = den_.signed_content();
    if (!c.is_one()) {
        Rational inv = c.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Polynomial g = Polynomial::gcd(a.den_, b.den_);
    Polynomial da = Polynomial::div_exact(a.den_, g);
    Polynomial db = Polynomial::div_exact(b.den_, g);
    return RationalFunction(a.num_ * db + b.num_ * da, da * db * g);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(Rational(0), a.vars());
    // Cross-cancel before multiplying to curb intermediate growth.
    Polynomial g1 = Polynomial::gcd(a.num_, b.den_);
    Polynomial g2 = Polynomial::gcd(b.num_, a.den_);
    Polynomial n = Polynomial::div_exact(a.num_, g1) * Polynomial::div_exact(b.num_, g2);
    Polynomial d = Polynomial::div_exact(a.den_, g2) * Polynomial::div_exact(b.den_, g1);
    return RationalFunction(std::move(n), std::move(d));
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero rational function");
    return a * RationalFunction(b.den_, b.num_);
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
    RationalFunction r = *this;
    r.num_ = r.num_.scaled(c);
    if (c.is_zero()) r.den_ = Polynomial::constant(Rational(1), den_.vars());
    return r;
}

RationalFunction RationalFunction::pow(const RationalFunction& a, long e) {
    if (e == 0) return RationalFunction(Rational(1), a.vars());
    if (e < 0) {
        if (a.is_zero()) throw std::domain_error("negative power of zero");
        return pow(RationalFunction(a.den_, a.num_), -e);
    }
    // num and den are coprime, so power them separately without re-cancelling.
    RationalFunction r;
    r.num_ = Polynomial::pow(a.num_, static_cast<unsigned>(e));
    r.den_ = Polynomial::pow(a.den_, static_cast<unsigned>(e));
    Rational c = r.den_.signed_content();
    if (!c.is_one()) {
        Rational inv = c.inverse();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

RationalFunction RationalFunction::derivative(const std::string& var) const {
    Polynomial dn = num_.derivative(var);
    if (den_.is_constant()) {
        RationalFunction r;
        r.num_ = std::move(dn);
        r.den_ = den_;
        if (r.num_.is_zero()) r.den_ = Polynomial::constant(Rational(1), den_.vars());
        return r;
    }
    Polynomial dd = den_.derivative(var);
    return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

Rational RationalFunction::evaluate(const std::vector<Rational>& point) const {
    Rational d = den_.evaluate(point);
    if (d.is_zero()) throw DenominatorVanishes(den_.str());
    return num_.evaluate(point) / d;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string RationalFunction::str() const {
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

}  // namespace kipp
