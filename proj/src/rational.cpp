#include "rational.hpp"

#include <ostream>
#include <stdexcept>

namespace kipp {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, den, 1);
    mpq_div(q_, q_, d);
    mpq_clear(d);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    mpq_init(q_);
    mpz_set(mpq_numref(q_), num.raw());
    mpz_set(mpq_denref(q_), den.raw());
    mpq_canonicalize(q_);
}

Rational::Rational(const BigInt& v) {
    mpq_init(q_);
    mpz_set(mpq_numref(q_), v.raw());
}

Rational::Rational(const std::string& text) {
    mpq_init(q_);
    if (mpq_set_str(q_, text.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) {
        mpq_clear(q_);
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    mpq_canonicalize(q_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

Rational Rational::pow(const Rational& a, long e) {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? a.inverse() : a;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::string Rational::str() const {
    std::string s = num().str();
    if (!is_integer()) s += "/" + den().str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

}  // namespace kipp
