#include "luminal/mbr.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "luminal/errors.hpp"
#include "luminal/random.hpp"

namespace luminal {

namespace {

void check_observer_speed(const Vec3& beta, const char* where) {
    if (!beta.is_finite() || beta.norm() >= 0.1) {
        throw std::invalid_argument(std::string(where) +
                                    ": observer speed must be below 0.1");
    }
}

using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

// Solves the symmetric positive-definite 4x4 system A x = b by Cholesky.
Vec4 solve_spd4(const Mat4& a, const Vec4& b) {
    Mat4 l{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (std::size_t k = 0; k < j; ++k) {
                sum -= l[i][k] * l[j][k];
            }
            if (i == j) {
                if (!(sum > 0.0)) {
                    throw std::invalid_argument(
                        "fit_dipole: sample directions do not span the sky "
                        "(design matrix is rank deficient)");
                }
                l[i][i] = std::sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Vec4 y{};
    for (std::size_t i = 0; i < 4; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    Vec4 x{};
    for (std::size_t ir = 4; ir-- > 0;) {
        double sum = y[ir];
        for (std::size_t k = ir + 1; k < 4; ++k) {
            sum -= l[k][ir] * x[k];
        }
        x[ir] = sum / l[ir][ir];
    }
    return x;
}

}  // namespace

double observed_temperature(double t_rest, const Vec3& beta, const Vec3& n_hat) {
    const double b2 = beta.norm_squared();
    return t_rest * std::sqrt(1.0 - b2) / (1.0 - dot(beta, n_hat));
}

std::vector<SkySample> synthesize_sky(const Vec3& beta, double t_rest,
                                      std::int64_t n_samples, double noise_sigma,
                                      std::uint64_t seed) {
    check_observer_speed(beta, "synthesize_sky");
    if (!(t_rest > 0.0)) {
        throw std::invalid_argument("synthesize_sky: rest temperature must be positive");
    }
    if (n_samples < 12) {
        throw std::invalid_argument("synthesize_sky: need at least 12 samples");
    }
    if (noise_sigma < 0.0) {
        throw std::invalid_argument("synthesize_sky: noise sigma must be non-negative");
    }

    // Directions come in antipodal pairs: the set is exactly closed under
    // negation, which decouples the fitted monopole from the dipole.
    const std::int64_t n_pairs = (n_samples + 1) / 2;
    Rng rng(seed);
    std::vector<SkySample> samples;
    samples.reserve(static_cast<std::size_t>(2 * n_pairs));
    for (std::int64_t i = 0; i < n_pairs; ++i) {
        const Vec3 n = rng.unit_vector();
        samples.push_back({n, observed_temperature(t_rest, beta, n)});
        samples.push_back({-n, observed_temperature(t_rest, beta, -n)});
    }
    if (noise_sigma > 0.0) {
        for (SkySample& s : samples) {
            s.temperature += noise_sigma * rng.normal();
        }
    }
    return samples;
}

DipoleFit fit_dipole(const std::vector<SkySample>& samples) {
    if (samples.size() < 4) {
        throw std::invalid_argument("fit_dipole: need at least 4 samples");
    }
    Mat4 a{};
    Vec4 b{};
    for (const SkySample& s : samples) {
        const Vec4 row{1.0, s.direction.x, s.direction.y, s.direction.z};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                a[i][j] += row[i] * row[j];
            }
            b[i] += row[i] * s.temperature;
        }
    }
    const Vec4 x = solve_spd4(a, b);

    DipoleFit fit;
    fit.monopole = x[0];
    fit.dipole = Vec3{x[1], x[2], x[3]};
    double ss = 0.0;
    for (const SkySample& s : samples) {
        const double r = s.temperature - (fit.monopole + dot(fit.dipole, s.direction));
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(samples.size()));
    return fit;
}

Vec3 compose_velocities(const Vec3& u, const Vec3& v) {
    const double u2 = u.norm_squared();
    if (u2 >= 1.0 || v.norm_squared() >= 1.0) {
        throw std::invalid_argument("compose_velocities: speeds must be below 1");
    }
    if (u2 == 0.0) {
        return v;
    }
    const double udotv = dot(u, v);
    const Vec3 v_par = u * (udotv / u2);
    const Vec3 v_perp = v - v_par;
    const double gamma_u = 1.0 / std::sqrt(1.0 - u2);
    return (u + v_par + v_perp / gamma_u) / (1.0 + udotv);
}

FrameEstimate find_null_frame(const Vec3& observer_beta, double t_rest,
                              const FrameSearchOptions& options) {
    check_observer_speed(observer_beta, "find_null_frame");
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("find_null_frame: tolerance must be positive");
    }

    Vec3 correction{0.0, 0.0, 0.0};
    double ratio = 0.0;
    for (int round = 0; round < options.max_iterations; ++round) {
        const Vec3 current = compose_velocities(observer_beta, correction);
        const std::uint64_t round_seed =
            Rng::derive_seed(options.seed, static_cast<std::uint64_t>(round));
        const DipoleFit fit = fit_dipole(synthesize_sky(
            current, t_rest, options.n_samples, options.noise_sigma, round_seed));
        ratio = fit.dipole.norm() / fit.monopole;
        if (ratio < options.tol) {
            return FrameEstimate{correction, round + 1, ratio};
        }
        correction = compose_velocities(correction, -(fit.dipole / fit.monopole));
    }
    throw ConvergenceError("find_null_frame: dipole ratio still " +
                           std::to_string(ratio) + " after " +
                           std::to_string(options.max_iterations) + " iterations");
}

}  // namespace luminal
