#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kipp {

// Arbitrary-precision signed integer, a thin RAII wrapper around GMP's mpz_t.
class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(long v) { mpz_init_set_si(z_, v); }
    explicit BigInt(const std::string& decimal);

    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.z_, z_);
        return r;
    }
    BigInt& operator+=(const BigInt& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }

    // Quotient of an exact division; undefined if b does not divide a.
    static BigInt div_exact(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt lcm(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt pow(const BigInt& a, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.z_, a.z_, e);
        return r;
    }

    BigInt abs() const {
        BigInt r;
        mpz_abs(r.z_, z_);
        return r;
    }
    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }
    size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }

    // Value reduced into [0, m); sign handled.
    uint64_t mod_u64(uint64_t m) const;

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const { return mpz_get_si(z_); }
    double to_double() const { return mpz_get_d(z_); }
    std::string str() const;

    const mpz_t& raw() const { return z_; }
    mpz_t& raw() { return z_; }

private:
    mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& v);

}  // namespace kipp
