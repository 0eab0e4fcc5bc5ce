#pragma once

#include <cstdint>
#include <vector>

#include "luminal/superposition.hpp"
#include "luminal/vec3.hpp"

namespace luminal {

/// Momentum-flux radius at angle theta from the motion (x) axis for group
/// speed v: 1 / sqrt(1 - v^2 cos^2 theta). Unit sphere at rest; prolate
/// along the motion axis with semi-major gamma when moving.
double flux_radius(double v, double theta);

/// Field-compression radius at the same angle: flux_radius / gamma. Oblate,
/// contracted along the motion axis (1/gamma transverse at theta = pi/2
/// becomes the familiar longitudinal contraction of the field pattern).
double em_radius(double v, double theta);

struct BalancedPair {
    Vec3 orientation{1.0, 0.0, 0.0};  // rest-frame pair axis (need not be unit)
    double rest_magnitude = 1.0;      // per-component momentum at rest, > 0
};

struct PairTransform {
    double a = 0.0;  // forward component magnitude after the boost
    double b = 0.0;  // backward component magnitude after the boost
    double r = 0.0;  // offset radius: distance from the shared centre gamma*v*m
};

/// Exact transform of a balanced back-to-back pair boosted to speed v along
/// +x. With c the cosine of the rest-frame pair axis against +x and m the
/// rest magnitude:
///   a = m gamma (1 + v c),  b = m gamma (1 - v c),
///   r = m sqrt(gamma^2 c^2 + 1 - c^2).
/// These satisfy a + b = 2 gamma m and the offset-triangle relation
/// a^2 = r^2 + (gamma v m)^2 + 2 gamma v m r cos(Theta), Theta being the
/// boosted-frame angle of the offset radius vector.
PairTransform pair_boost_closed_form(const BalancedPair& pair, double v);

/// Two-component superposition realising the pair at rest: +/- m n_hat.
Superposition make_pair_superposition(const BalancedPair& pair);

/// Rest particle built from n_pairs antipodal component pairs with isotropic
/// random orientations (seeded, deterministic) and a common magnitude. The
/// pair members are adjacent in component order, so the sequential momentum
/// sum cancels exactly: total_momentum is bitwise (0,0,0).
Superposition make_isotropic_rest(std::int64_t n_pairs, double magnitude,
                                  std::uint64_t seed);

struct FluxSample {
    double theta = 0.0;           // representative angle (mean cosine of the bin)
    double r_empirical = 0.0;     // mean normalised offset radius in the bin
    double r_closed_form = 0.0;   // flux_radius(v, theta)
    double r_em = 0.0;            // em_radius(v, theta)
    std::int64_t count = 0;       // components that landed in the bin
};

struct FluxProfile {
    double v = 0.0;
    std::vector<FluxSample> bins;  // ascending theta, empty bins omitted
    /// max over bins of |r_empirical - r_closed_form| / r_closed_form
    double max_relative_error = 0.0;
};

/// Boosts a rest superposition to speed v along +x and measures the
/// direction-resolved momentum flux. The flux surface is centred on the
/// particle momentum, so each component is read off as an offset radius
/// q_i = p'_i - gamma v m_i x_hat (m_i the component's rest magnitude, so
/// gamma v m_i is its share of the total momentum). Offset radii are
/// normalised by m_i and binned by their angle to +x into n_bins
/// equal-cos-width bins; each bin reports its mean radius against the
/// closed form evaluated at the bin's mean cosine.
///
/// Requires s_rest to actually be at rest (group speed <= 1e-9).
FluxProfile ellipsoid_profile(const Superposition& s_rest, double v, int n_bins,
                              double boost_tol = 1e-9);

/// Per-component charges q_i = Q |p_i| / m_e; the shares sum to Q exactly
/// up to roundoff, in any frame.
std::vector<double> apportion_charge(const Superposition& s, double q_total);

struct EllipseFit {
    double semi_major = 0.0;
    double semi_minor = 0.0;
    double eccentricity = 0.0;
};

/// Least-squares fit of an axis-aligned origin-centred ellipse
/// u x^2 + w y^2 = 1 to the profile's bin points (r cos theta, r sin theta).
/// For the flux surface the fitted eccentricity converges to the group
/// speed v.
EllipseFit fit_ellipse(const FluxProfile& profile);

}  // namespace luminal
