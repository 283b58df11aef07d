#pragma once

#include <vector>

#include "ratfunc.hpp"

namespace kipp {

// Truncated bivariate Taylor expansion of a rational function at a rational
// point: all partial derivative values up to a given total order, computed by
// exact power-series division in the local ring at the point. Equivalent to
// repeated symbolic differentiation plus evaluation, but with no intermediate
// expression growth.
class JetTable {
public:
    JetTable() = default;
    JetTable(int order, std::vector<Rational> taylor) : order_(order), taylor_(std::move(taylor)) {}

    int order() const { return order_; }

    // Taylor coefficient t_{ab} with f(x0+s, y0+t) = sum t_{ab} s^a t^b.
    const Rational& taylor(int a, int b) const { return taylor_[index(a, b)]; }

    // Exact derivative value  d^{a+b} f / dx^a dy^b  at the point.
    Rational derivative(int a, int b) const;

    Rational value() const { return taylor_[0]; }

    static size_t index(int a, int b) {
        int g = a + b;
        return static_cast<size_t>(g) * (g + 1) / 2 + b;
    }
    static size_t size_for(int order) {
        return static_cast<size_t>(order + 1) * (order + 2) / 2;
    }

private:
    int order_ = -1;
    std::vector<Rational> taylor_;
};

// Expands f around (x0, y0) to the given total order. f must be a function of
// at most the two variables named x_name/y_name. Throws DenominatorVanishes
// when the denominator is zero at the point.
JetTable expand_jet(const RationalFunction& f, const std::string& x_name, const std::string& y_name,
                    const Rational& x0, const Rational& y0, int order);

}  // namespace kipp
