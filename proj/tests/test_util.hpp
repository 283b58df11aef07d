#pragma once

#include <cstdint>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"
#include "ratfunc.hpp"

namespace kipp::testutil {

// Deterministic PRNG for reproducible randomized tests (splitmix64).
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    Rational rational(long max_abs = 9, long max_den = 5) {
        long n = range(-max_abs, max_abs);
        long d = range(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(long max_abs = 9, long max_den = 5) {
        Rational r = rational(max_abs, max_den);
        while (r.is_zero()) r = rational(max_abs, max_den);
        return r;
    }

    Polynomial polynomial(const std::vector<std::string>& vars, int max_deg, int max_terms) {
        Polynomial p(vars);
        int terms = static_cast<int>(range(1, max_terms));
        for (int t = 0; t < terms; ++t) {
            ExpVec e(vars.size());
            for (auto& k : e) k = static_cast<uint32_t>(range(0, max_deg));
            p += Polynomial::monomial(rational(), e, vars);
        }
        return p;
    }

    Polynomial nonzero_polynomial(const std::vector<std::string>& vars, int max_deg, int max_terms) {
        Polynomial p = polynomial(vars, max_deg, max_terms);
        while (p.is_zero()) p = polynomial(vars, max_deg, max_terms);
        return p;
    }

    RationalFunction ratfunc(const std::vector<std::string>& vars, int max_deg = 2,
                             int max_terms = 3) {
        return RationalFunction(polynomial(vars, max_deg, max_terms),
                                nonzero_polynomial(vars, max_deg, max_terms));
    }

private:
    uint64_t s_;
};

}  // namespace kipp::testutil
