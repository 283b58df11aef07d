#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ratfunc.hpp"

namespace kipp {

// Exponent vector of a momentum monomial p_x^i p_y^j p_phi^k p_t^m.
using MomExp = std::array<int, 4>;

inline int total_degree(const MomExp& e) { return e[0] + e[1] + e[2] + e[3]; }

// Parity of the total degree in (p_phi, p_t).
enum class Parity { Even = 0, Odd = 1 };

inline Parity parity_of(const MomExp& e) { return (e[2] + e[3]) % 2 ? Parity::Odd : Parity::Even; }
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// Graded-lex descending order (leading momentum monomial first).
struct MomExpGrlexDesc {
    bool operator()(const MomExp& a, const MomExp& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;  // lexicographic on (i, j, k, m)
    }
};

// Polynomial in the four momenta with rational-function coefficients in the
// base coordinates. The workhorse behind Hamiltonians, integral ansatze and
// Poisson brackets.
class MomentumPolynomial {
public:
    using Terms = std::map<MomExp, RationalFunction, MomExpGrlexDesc>;

    MomentumPolynomial() = default;

    static MomentumPolynomial momentum(int axis);  // p_axis
    static MomentumPolynomial term(const MomExp& e, RationalFunction coeff);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

    void add_term(const MomExp& e, const RationalFunction& coeff);

    friend MomentumPolynomial operator+(const MomentumPolynomial& a, const MomentumPolynomial& b);
    friend MomentumPolynomial operator-(const MomentumPolynomial& a, const MomentumPolynomial& b);
    friend MomentumPolynomial operator*(const MomentumPolynomial& a, const MomentumPolynomial& b);
    MomentumPolynomial& operator+=(const MomentumPolynomial& o) { return *this = *this + o; }
    MomentumPolynomial& operator*=(const MomentumPolynomial& o) { return *this = *this * o; }

    MomentumPolynomial scaled(const RationalFunction& c) const;
    static MomentumPolynomial pow(const MomentumPolynomial& a, unsigned e);

    // d/dp_axis: lowers the exponent on one momentum.
    MomentumPolynomial momentum_derivative(int axis) const;
    // Coefficient-wise d/d var on the base coordinates.
    MomentumPolynomial coordinate_derivative(const std::string& var) const;

    // Exact value given base point and momentum values.
    Rational evaluate(const std::vector<Rational>& base_point,
                      const std::array<Rational, 4>& momenta) const;

    // True when every coefficient's total (p_phi, p_t)-degree is even.
    bool is_even_in_cyclic_momenta() const;

    std::string str(const std::array<std::string, 4>& momentum_names) const;

private:
    Terms terms_;
};

// Canonical Poisson bracket of two momentum polynomials whose coefficients
// depend only on the two base coordinates named in `coords`:
//   {F, G} = sum_q dF/dq dG/dp_q - dF/dp_q dG/dq   over q in {x, y}.
MomentumPolynomial poisson_bracket(const MomentumPolynomial& f, const MomentumPolynomial& g,
                                   const std::array<std::string, 2>& coords);

}  // namespace kipp
