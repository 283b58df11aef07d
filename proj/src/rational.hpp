#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bigint.hpp"

namespace kipp {

// Exact rational number. Always canonical: gcd(|num|, den) = 1, den > 0,
// zero is 0/1. Backed by GMP's mpq_t.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const BigInt& v);
    // Accepts "n" or "n/d" with optional leading '-'.
    explicit Rational(const std::string& text);

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o);

    Rational inverse() const;
    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }
    static Rational pow(const Rational& a, long e);

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }

    BigInt num() const {
        BigInt r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    BigInt den() const {
        BigInt r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    double to_double() const { return mpq_get_d(q_); }
    // "n" when integral, else "n/d".
    std::string str() const;

    size_t bit_length() const { return num().bit_length() + den().bit_length(); }

    const mpq_t& raw() const { return q_; }

private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace kipp
