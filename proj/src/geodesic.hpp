#pragma once

#include <array>

#include "metric.hpp"

namespace kipp {

// Floating-point sanity checker: integrates Hamilton's equations of the
// geodesic flow with fixed-step RK4 and reports conservation drift. This is
// the one deliberately non-rigorous corner of the tool; it validates that the
// Hamiltonian driving the exact analysis generates a flow with the expected
// conserved quantities.
struct GeodesicResult {
    double drift_h = 0;     // max relative drift of H along the trajectory
    double drift_pphi = 0;  // exact 0: the flow never touches p_phi
    double drift_pt = 0;    // exact 0: the flow never touches p_t
    long steps = 0;
};

// state = {x, y, phi, t, p_x, p_y, p_phi, p_t}. Throws SingularPointError
// (with the step index) when the trajectory hits the singular locus.
GeodesicResult geodesic_sanity(const MetricSpec& metric, const std::array<double, 8>& state,
                               long steps, double step_size);

}  // namespace kipp
