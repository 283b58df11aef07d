#include "modular.hpp"

namespace kipp {

Montgomery::Montgomery(uint64_t p) : p_(p) {
    // ninv = -p^{-1} mod 2^64 by Newton iteration.
    uint64_t inv = p;
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    ninv_ = ~inv + 1;
    // r2 = 2^128 mod p, via (2^64 mod p)^2 mod p
    unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
    r = (r * r) % p;
    r2_ = static_cast<uint64_t>(r);
    one_ = to(1);
}

uint64_t Montgomery::pow(uint64_t a, uint64_t e) const {
    uint64_t r = one_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

namespace {

uint64_t mulmod_u128(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u128(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u128(r, a, m);
        a = mulmod_u128(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t PrimeStream::next() {
    for (;;) {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        // force into [2^59, 2^60) and make odd
        uint64_t cand = (z >> 5) | (1ULL << 59) | 1ULL;
        cand &= (1ULL << 60) - 1;
        if (is_prime_u64(cand)) return cand;
    }
}

std::optional<size_t> rank_mod_p(const SparseRationalMatrix& m, uint64_t p) {
    Montgomery mg(p);
    size_t R = m.rows(), C = m.cols();
    if (R == 0 || C == 0) return 0;

    std::vector<std::vector<uint64_t>> a(R, std::vector<uint64_t>(C, 0));
    for (size_t r = 0; r < R; ++r) {
        for (const auto& [c, v] : m.row(r)) {
            uint64_t den = v.den().mod_u64(p);
            if (den == 0) return std::nullopt;
            uint64_t num = v.num().mod_u64(p);
            a[r][c] = mg.mul(mg.to(num), mg.inv(mg.to(den)));
        }
    }

    size_t rank = 0;
    for (size_t col = 0; col < C && rank < R; ++col) {
        size_t piv = rank;
        while (piv < R && a[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[rank]);
        uint64_t inv = mg.inv(a[rank][col]);
        for (size_t r = rank + 1; r < R; ++r) {
            uint64_t f = a[r][col];
            if (f == 0) continue;
            f = mg.mul(f, inv);
            const uint64_t* src = a[rank].data();
            uint64_t* dst = a[r].data();
            dst[col] = 0;
            for (size_t c = col + 1; c < C; ++c) {
                if (src[c]) dst[c] = mg.sub(dst[c], mg.mul(f, src[c]));
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace kipp
