#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "metric.hpp"
#include "momentum.hpp"

namespace kipp {

// One unknown coefficient function I_{ijkm}(x, y) of the integral ansatz.
struct Unknown {
    MomExp index;
    Parity parity;
};

enum class Deriv { Value, Dx, Dy };

// coefficient * D(unknown); the coefficient is a rational function of the
// base coordinates.
struct PDETerm {
    int unknown;  // index into LinearPDESystem::unknowns
    Deriv deriv;
    RationalFunction coeff;
};

// One scalar equation, tagged by the momentum monomial it came from.
struct PDEEquation {
    MomExp tag;
    std::vector<PDETerm> terms;
};

enum class SystemParity { Odd, Even, Mixed };

// First-order linear PDE system on the ansatz coefficients.
struct LinearPDESystem {
    int degree = 0;
    SystemParity parity = SystemParity::Mixed;
    std::array<std::string, 2> base_coords;
    std::vector<Unknown> unknowns;
    std::vector<PDEEquation> equations;

    size_t num_unknowns() const { return unknowns.size(); }
    size_t num_equations() const { return equations.size(); }
};

// All exponent vectors (i,j,k,m) with i+j+k+m = degree, graded-lex ordered
// (leading monomial first). C(degree+3, 3) of them.
std::vector<MomExp> enumerate_ansatz(int degree);

// Builds the system S: substitute I = sum I_{ijkm} p^{ijkm} into {H, I} and
// collect the coefficient of every momentum monomial of degree+1. Equation
// count is C(degree+4, 3).
LinearPDESystem poisson_bracket_system(const Hamiltonian& h, int degree);

// Splits S by the parity of k+m of the momentum-monomial tags. Requires a
// Hamiltonian even in the cyclic momenta; throws Error with a diagnostic when
// an equation mixes parities.
std::pair<LinearPDESystem, LinearPDESystem> split_parity(const LinearPDESystem& s);

// Substitutes concrete coefficient functions for the unknowns; returns the
// residual of each equation as a rational function.
std::vector<RationalFunction> substitute(const LinearPDESystem& s,
                                         const std::vector<RationalFunction>& values);

// The coefficient functions of a momentum polynomial laid out over the
// system's unknown list; throws if the polynomial has monomials outside it.
std::vector<RationalFunction> coefficients_over(const LinearPDESystem& s,
                                                const MomentumPolynomial& p);

// Debug dump, one equation per line.
void dump_system(const LinearPDESystem& s, std::ostream& os);

std::string unknown_label(const MomExp& e);

}  // namespace kipp
