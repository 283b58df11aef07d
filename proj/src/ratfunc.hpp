#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace kipp {

// Quotient of two polynomials in canonical form: gcd(num, den) is a unit,
// den is integer-primitive with positive leading coefficient, and the zero
// function is 0/1. Equality of canonical forms is plain structural equality.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(Rational(1))) {}
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(Polynomial num);
    explicit RationalFunction(const Rational& c, std::vector<std::string> vars = {});

    static RationalFunction variable(const std::string& name, const std::vector<std::string>& vars) {
        return RationalFunction(Polynomial::variable(name, vars));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction scaled(const Rational& c) const;
    static RationalFunction pow(const RationalFunction& a, long e);

    RationalFunction derivative(const std::string& var) const;

    // Exact value at a point assigning all variables of num and den, given in
    // the order of vars(). Throws DenominatorVanishes on the singular locus.
    Rational evaluate(const std::vector<Rational>& point) const;

    const std::vector<std::string>& vars() const { return num_.vars(); }
    RationalFunction with_vars(const std::vector<std::string>& vars) const {
        return RationalFunction(num_.with_vars(vars), den_.with_vars(vars));
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // "num" for polynomials, "(num)/(den)" otherwise; re-parsable.
    std::string str() const;

private:
    void normalize();

    Polynomial num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

}  // namespace kipp
