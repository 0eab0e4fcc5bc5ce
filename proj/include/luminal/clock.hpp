#pragma once

#include <vector>

#include "luminal/superposition.hpp"
#include "luminal/vec3.hpp"

namespace luminal {

/// Residual motion of one component once the group velocity is subtracted:
/// direction - V. The component still moves at c; this is the part of that
/// motion not shared with the superposition as a whole.
Vec3 internal_velocity(const WaveComponent& component, const Vec3& group_velocity);

struct ClockReport {
    double speed = 0.0;     // group speed |V|
    double gamma = 0.0;     // 1 / sqrt(1 - speed^2), +inf in the luminal limit
    double v_z = 0.0;       // RMS internal speed
    double residual = 0.0;  // |v_z - sqrt(1 - speed^2)|
};

/// RMS internal speed: sqrt(sum_i p_i |v_int,i|^2 / m_e), the energy-weighted
/// quadratic mean of the residual speeds. Computed by summation, never from
/// the closed form, so the reported residual against sqrt(1 - V^2) stays a
/// real measurement. The residual is pure roundoff (below 1e-12) for every
/// valid superposition; the agreement is algebraically exact.
ClockReport zitter_speed(const Superposition& s);

/// The sqrt(1 - V^2) scaling law on its own. Equals zitter_speed(s).v_z to
/// roundoff whenever V_group is the group speed of s.
double dirac_zitter_scale(double v_group);

/// Boosts a fresh copy of the superposition to each requested speed (along
/// +x) and reports how the internal RMS speed tracks the dilation factor.
/// Speeds must lie in [0, 1 - 1e-9); boost failures propagate.
std::vector<ClockReport> dilation_sweep(const Superposition& s,
                                        const std::vector<double>& speeds,
                                        double boost_tol = 1e-9);

}  // namespace luminal
