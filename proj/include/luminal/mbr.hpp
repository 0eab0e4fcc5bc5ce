#pragma once

#include <cstdint>
#include <vector>

#include "luminal/vec3.hpp"

namespace luminal {

/// Observed blackbody temperature in arrival direction n_hat for an
/// observer moving with velocity beta through an isotropic bath at rest
/// temperature t_rest:
///   T(n) = t_rest sqrt(1 - beta^2) / (1 - beta . n).
/// Hotter toward the direction of motion, colder behind, with the
/// second-order relativistic correction included.
double observed_temperature(double t_rest, const Vec3& beta, const Vec3& n_hat);

struct SkySample {
    Vec3 direction;            // unit arrival direction
    double temperature = 0.0;  // kelvin
};

/// Synthesises the directional temperature sky seen by an observer moving
/// at beta (|beta| < 0.1). Directions are isotropic and drawn in antipodal
/// pairs (n_samples is rounded up to even), so the sample set is exactly
/// closed under negation and the monopole and dipole of the fit decouple.
/// Optional additive Gaussian noise of standard deviation noise_sigma
/// kelvin. Deterministic per seed. Requires n_samples >= 12.
std::vector<SkySample> synthesize_sky(const Vec3& beta, double t_rest,
                                      std::int64_t n_samples, double noise_sigma,
                                      std::uint64_t seed);

struct DipoleFit {
    double monopole = 0.0;     // kelvin
    Vec3 dipole;               // kelvin
    double residual_rms = 0.0; // RMS of T - (monopole + dipole . n)
};

/// Least-squares fit of T(n) ~ monopole + dipole . n over the samples via
/// the 4x4 normal equations (Cholesky). Requires at least 4 samples whose
/// directions span three dimensions; degenerate geometry throws
/// std::invalid_argument naming the deficiency.
DipoleFit fit_dipole(const std::vector<SkySample>& samples);

/// Relativistic velocity composition: the bath-frame velocity of a body
/// moving at v in a frame that itself moves at u. Exact, including the
/// transverse 1/gamma_u factor. Requires |u| < 1 and |v| < 1.
Vec3 compose_velocities(const Vec3& u, const Vec3& v);

struct FrameEstimate {
    /// Accumulated correction velocity that nulls the dipole; its negation
    /// estimates the observer's velocity through the bath.
    Vec3 beta;
    int iterations = 0;
    double final_dipole_ratio = 0.0;  // |dipole| / monopole at convergence
};

struct FrameSearchOptions {
    std::int64_t n_samples = 10'000;
    double noise_sigma = 0.0;
    double tol = 1e-9;  // convergence gate on |dipole| / monopole
    int max_iterations = 100;
    std::uint64_t seed = 1;
};

/// Finds the frame in which the bath has no dipole. Each round synthesises
/// the sky seen at the composed velocity (observer velocity combined with
/// the accumulated correction), fits the dipole, and if the ratio
/// |dipole| / monopole is still at or above tol applies the first-order
/// update -dipole/monopole, composed relativistically onto the correction.
/// Fresh directions are drawn each round from a seed derived from
/// (options.seed, round).
///
/// Throws ConvergenceError carrying the last ratio if still unconverged
/// after max_iterations rounds.
FrameEstimate find_null_frame(const Vec3& observer_beta, double t_rest,
                              const FrameSearchOptions& options);

/// One-way light speed used to convert between beta and km/s in reports.
inline constexpr double kSpeedOfLightKms = 299'792.458;

}  // namespace luminal
