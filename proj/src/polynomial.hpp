#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rational.hpp"

namespace kipp {

using ExpVec = std::vector<uint32_t>;

// Graded lexicographic order on exponent vectors of equal length.
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Sparse multivariate polynomial over the rationals, in canonical form:
// a fixed ordered variable list and a term map with no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(const Rational& c, std::vector<std::string> vars = {});
    static Polynomial variable(const std::string& name, const std::vector<std::string>& vars);
    static Polynomial monomial(const Rational& c, ExpVec exps, std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<ExpVec, Rational, GrlexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term; the polynomial need not be constant.
    Rational constant_value() const;

    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(size_t var_index) const;
    size_t term_count() const { return terms_.size(); }

    // Leading term under grlex.
    const Rational& leading_coefficient() const;
    const ExpVec& leading_exponents() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Rational& c) const;
    static Polynomial pow(const Polynomial& a, unsigned e);

    Polynomial derivative(size_t var_index) const;
    Polynomial derivative(const std::string& var) const;

    // point must assign every variable of vars(), in order.
    Rational evaluate(const std::vector<Rational>& point) const;

    // Exact quotient; throws if the division is not exact.
    static Polynomial div_exact(const Polynomial& a, const Polynomial& b);

    // GCD up to units, normalized to integer-primitive with positive leading
    // coefficient. gcd(0, b) = normalized b.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b);

    // Rational c such that (*this)/c has coprime integer coefficients and a
    // positive leading coefficient. Zero polynomial yields 1.
    Rational signed_content() const;
    Polynomial primitive_part() const { return scaled(signed_content().inverse()); }

    size_t var_index(const std::string& name) const;  // npos if absent
    bool depends_on(size_t var_index) const;

    // Rewrites over a superset variable list (every current variable must appear).
    Polynomial with_vars(const std::vector<std::string>& vars) const;
    // Smallest variable list (drops unused variables, preserving order).
    Polynomial compacted() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Grammar-compatible rendering, e.g. "3/2*x^2*y - x + 5".
    std::string str() const;

    size_t max_coeff_bits() const;

    static constexpr size_t npos = static_cast<size_t>(-1);

private:
    void insert_term(const ExpVec& e, const Rational& c);
    static void align(const Polynomial& a, const Polynomial& b, Polynomial& oa, Polynomial& ob);

    std::vector<std::string> vars_;
    std::map<ExpVec, Rational, GrlexLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace kipp
