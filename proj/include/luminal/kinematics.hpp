#pragma once

#include <cstdint>

#include "luminal/superposition.hpp"
#include "luminal/vec3.hpp"

namespace luminal {

/// Group (particle) momentum: the vector sum of all component momenta.
Vec3 total_momentum(const Superposition& s);

/// Total energy: the sum of component momentum magnitudes (c = 1, so each
/// component's energy equals the momentum it carries). Strictly positive.
double total_energy(const Superposition& s);

/// Group velocity: the momentum-weighted average of the component unit
/// velocities. Its modulus lies in [0, 1], reaching 1 only when every
/// component propagates in the same direction.
Vec3 group_velocity(const Superposition& s);

/// Effective (inertial) mass, defined through P = m_e V. Numerically equal
/// to the total energy in natural units.
double effective_mass(const Superposition& s);

/// Invariant rest mass: sqrt(m_e^2 - |P|^2). Zero only when all component
/// directions coincide. A tiny negative radicand (|radicand| <= 1e-12 m_e^2,
/// pure roundoff) is clamped to zero; anything larger indicates a corrupted
/// state and throws std::domain_error.
double rest_mass(const Superposition& s);

/// Applies one first-order apportionment step: an external impulse is
/// distributed over the components in proportion to the momentum each one
/// carries, p_i += impulse * (|p_i| / m_e). Because the weights sum to one,
/// the total momentum changes by exactly the impulse (up to roundoff).
///
/// Throws std::domain_error if the step would push any component magnitude
/// below 1e-15 * m_e — the impulse is too large to apply in one step.
Superposition apportion_step(const Superposition& s, const Vec3& impulse);

struct BoostOptions {
    /// Cap on a single sub-step impulse as a fraction of the current
    /// effective mass.
    double max_step_fraction = 1e-4;
    /// Sub-step budget before giving up with a ConvergenceError.
    std::int64_t max_steps = 1'000'000;
};

struct BoostResult {
    Superposition final;
    std::int64_t steps_taken = 0;
    double rest_mass_initial = 0.0;
    double rest_mass_final = 0.0;
    /// Largest deviation, over all sub-steps, between the accumulated total
    /// momentum and the momentum the applied impulses account for.
    double max_momentum_residual = 0.0;
};

/// Accelerates a superposition to the requested group velocity by
/// integrating the apportionment dynamics in fixed-direction impulse
/// sub-steps, each capped at max_step_fraction * m_e with m_e recomputed
/// after every sub-step. The required total impulse is obtained from the
/// conserved rest mass via P = gamma m0 V, then verified.
///
/// Sub-steps advance the component momenta with a classical RK4 stage
/// update; the stage weights sum to one component-wise, so each sub-step
/// still transfers exactly its impulse to the total momentum.
///
/// On success: |V_final - target| <= tol, the relative rest-mass drift is
/// at most 10 * tol, and |P_final - gamma m0 V| <= tol * m_e.
///
/// Throws std::invalid_argument for |target| >= 1 - 1e-9, tol <= 0, or a
/// massless superposition (no rest frame); ConvergenceError if the step
/// budget is exhausted or a post-condition check fails.
BoostResult boost(const Superposition& s, const Vec3& target_velocity, double tol,
                  const BoostOptions& options = {});

/// Largest admissible target speed, kept strictly below c so the Lorentz
/// factor stays representable.
inline constexpr double kMaxBoostSpeed = 1.0 - 1e-9;

}  // namespace luminal
