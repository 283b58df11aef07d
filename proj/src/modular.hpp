#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparse.hpp"

namespace kipp {

// Montgomery arithmetic modulo an odd prime p < 2^62.
class Montgomery {
public:
    explicit Montgomery(uint64_t p);

    uint64_t prime() const { return p_; }

    uint64_t to(uint64_t x) const { return mul_raw(x % p_, r2_); }
    uint64_t from(uint64_t m) const { return redc(m); }

    uint64_t mul(uint64_t a, uint64_t b) const { return mul_raw(a, b); }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const { return pow(a, p_ - 2); }
    uint64_t one() const { return one_; }

private:
    uint64_t mul_raw(uint64_t a, uint64_t b) const {
        return redc_wide(static_cast<unsigned __int128>(a) * b);
    }
    uint64_t redc(uint64_t t) const { return redc_wide(t); }
    uint64_t redc_wide(unsigned __int128 t) const {
        uint64_t m = static_cast<uint64_t>(t) * ninv_;
        unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
        uint64_t r = static_cast<uint64_t>(u);
        return r >= p_ ? r - p_ : r;
    }

    uint64_t p_, ninv_, r2_, one_;
};

bool is_prime_u64(uint64_t n);

// Deterministic stream of ~60-bit primes; the same seed yields the same
// sequence, which keeps reports reproducible.
class PrimeStream {
public:
    explicit PrimeStream(uint64_t seed) : state_(seed) {}
    uint64_t next();

private:
    uint64_t state_;
};

constexpr uint64_t kDefaultPrimeSeed = 0x6b697070726e6bULL;

// Dense rank over F_p by Gaussian elimination.
// Returns nullopt when some entry's denominator is divisible by p.
std::optional<size_t> rank_mod_p(const SparseRationalMatrix& m, uint64_t p);

}  // namespace kipp
