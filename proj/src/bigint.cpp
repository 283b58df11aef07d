#include "bigint.hpp"

#include <ostream>
#include <stdexcept>
#include <vector>

namespace kipp {

BigInt::BigInt(const std::string& decimal) {
    if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
        mpz_clear(z_);
        throw std::invalid_argument("not a decimal integer: '" + decimal + "'");
    }
}

BigInt BigInt::div_exact(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    BigInt r;
    mpz_divexact(r.z_, a.z_, b.z_);
    return r;
}

uint64_t BigInt::mod_u64(uint64_t m) const {
    if (m == 0) throw std::domain_error("modulus is zero");
    mpz_t mm, rr;
    mpz_init_set_ui(mm, m);
    mpz_init(rr);
    mpz_fdiv_r(rr, z_, mm);  // floored remainder, always in [0, m)
    uint64_t out = mpz_get_ui(rr);
    mpz_clear(rr);
    mpz_clear(mm);
    return out;
}

std::string BigInt::str() const {
    std::vector<char> buf(mpz_sizeinbase(z_, 10) + 2);
    mpz_get_str(buf.data(), 10, z_);
    return std::string(buf.data());
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.str(); }

}  // namespace kipp
