#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "momentum.hpp"
#include "ratfunc.hpp"

namespace kipp {

// Stationary axisymmetric metric: 4x4 symmetric matrix of rational functions
// in the first two coordinates; the last two coordinates are cyclic.
struct MetricSpec {
    std::array<std::string, 4> coords{"x", "y", "phi", "t"};
    // Lower-index components, g[i][j] == g[j][i].
    std::array<std::array<RationalFunction, 4>, 4> g;
    // Polynomials that must not vanish at an evaluation point.
    std::vector<Polynomial> forbidden;
    std::string name;  // e.g. "zipoy-voorhees delta=2" or the source file

    const std::array<std::string, 2> base_coords() const { return {coords[0], coords[1]}; }
    const std::array<std::string, 2> cyclic_coords() const { return {coords[2], coords[3]}; }

    // Validates symmetry, coordinate dependence and the forbid list at a point.
    void validate() const;
    // Throws SingularPointError when the point hits a forbidden polynomial.
    void check_point(const Rational& x0, const Rational& y0) const;

    // Canonical text form; also the on-disk metric file format.
    std::string canonical_text() const;
};

struct InverseMetric {
    std::array<std::array<RationalFunction, 4>, 4> g_upper;
};

// Quadratic Hamiltonian H = 1/2 g^{ij} p_i p_j.
struct Hamiltonian {
    MomentumPolynomial poly;
    std::array<std::string, 4> coords;

    const std::array<std::string, 2> base_coords() const { return {coords[0], coords[1]}; }
};

struct ZipoyVoorheesParams {
    long delta = 2;
};

// The one-parameter static axisymmetric family in prolate spheroidal-type
// coordinates; delta = 0 is flat space, delta = 1 Schwarzschild. Non-negative
// integer delta keeps every component a rational function.
MetricSpec zipoy_voorhees(const ZipoyVoorheesParams& params);

// Exact inverse via adjugate over the rational-function field.
// Throws Error when the determinant is identically zero.
InverseMetric invert(const MetricSpec& m);

Hamiltonian hamiltonian(const MetricSpec& m, const InverseMetric& inv);

// Metric definition file: 'coords:' and 'cyclic:' lines, 'g <i> <j> = <expr>'
// component lines (0-based, symmetric completion automatic) and optional
// 'forbid = <expr>' lines.
MetricSpec parse_metric_file(const std::string& content, const std::string& name);
MetricSpec load_metric_file(const std::string& path);

}  // namespace kipp
