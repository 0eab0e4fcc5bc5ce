#include "luminal/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "luminal/kinematics.hpp"
#include "luminal/random.hpp"

namespace luminal {

namespace {

double gamma_of(double v) {
    return 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

void check_speed(double v, const char* where) {
    if (!(v >= 0.0 && v <= kMaxBoostSpeed)) {
        throw std::invalid_argument(std::string(where) +
                                    ": speed must lie in [0, 1 - 1e-9]");
    }
}

}  // namespace

double flux_radius(double v, double theta) {
    check_speed(v, "flux_radius");
    const double c = std::cos(theta);
    return 1.0 / std::sqrt(1.0 - v * v * c * c);
}

double em_radius(double v, double theta) {
    check_speed(v, "em_radius");
    return flux_radius(v, theta) / gamma_of(v);
}

PairTransform pair_boost_closed_form(const BalancedPair& pair, double v) {
    check_speed(v, "pair_boost_closed_form");
    if (!(pair.rest_magnitude > 0.0)) {
        throw std::invalid_argument("pair_boost_closed_form: rest magnitude must be positive");
    }
    const double axis_norm = pair.orientation.norm();
    if (!(axis_norm > 0.0) || !pair.orientation.is_finite()) {
        throw std::invalid_argument("pair_boost_closed_form: orientation must be a nonzero vector");
    }
    const double c = pair.orientation.x / axis_norm;
    const double gamma = gamma_of(v);
    const double m = pair.rest_magnitude;
    PairTransform t;
    t.a = m * gamma * (1.0 + v * c);
    t.b = m * gamma * (1.0 - v * c);
    t.r = m * std::sqrt(gamma * gamma * c * c + (1.0 - c * c));
    return t;
}

Superposition make_pair_superposition(const BalancedPair& pair) {
    const double axis_norm = pair.orientation.norm();
    if (!(axis_norm > 0.0) || !pair.orientation.is_finite()) {
        throw std::invalid_argument("make_pair_superposition: orientation must be a nonzero vector");
    }
    const Vec3 p = pair.orientation * (pair.rest_magnitude / axis_norm);
    return Superposition::from_momenta({p, -p});
}

Superposition make_isotropic_rest(std::int64_t n_pairs, double magnitude,
                                  std::uint64_t seed) {
    if (n_pairs < 1) {
        throw std::invalid_argument("make_isotropic_rest: need at least one pair");
    }
    if (!(magnitude > 0.0)) {
        throw std::invalid_argument("make_isotropic_rest: magnitude must be positive");
    }
    Rng rng(seed);
    std::vector<Vec3> momenta;
    momenta.reserve(static_cast<std::size_t>(2 * n_pairs));
    for (std::int64_t i = 0; i < n_pairs; ++i) {
        const Vec3 p = rng.unit_vector() * magnitude;
        // Antipodal partners adjacent: the running momentum sum returns to
        // exactly zero after every pair.
        momenta.push_back(p);
        momenta.push_back(-p);
    }
    return Superposition::from_momenta(momenta);
}

FluxProfile ellipsoid_profile(const Superposition& s_rest, double v, int n_bins,
                              double boost_tol) {
    check_speed(v, "ellipsoid_profile");
    if (n_bins < 1) {
        throw std::invalid_argument("ellipsoid_profile: need at least one bin");
    }
    if (group_velocity(s_rest).norm() > 1e-9) {
        throw std::invalid_argument("ellipsoid_profile: input superposition is not at rest");
    }

    std::vector<double> rest_magnitudes;
    rest_magnitudes.reserve(s_rest.size());
    for (const WaveComponent& c : s_rest.components()) {
        rest_magnitudes.push_back(c.magnitude());
    }

    const Superposition boosted =
        v == 0.0 ? s_rest : boost(s_rest, Vec3{v, 0.0, 0.0}, boost_tol).final;

    // Accumulate normalised offset radii per equal-cos bin. The offset
    // gamma v m_i along +x is component i's share of the total momentum;
    // what remains is the flux radius the closed form describes.
    const double gamma = gamma_of(v);
    std::vector<double> sum_r(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<double> sum_cos(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<std::int64_t> count(static_cast<std::size_t>(n_bins), 0);

    for (std::size_t i = 0; i < boosted.size(); ++i) {
        const double m_i = rest_magnitudes[i];
        Vec3 q = boosted.components()[i].momentum;
        q.x -= gamma * v * m_i;
        const double q_norm = q.norm();
        const double cos_angle = q_norm > 0.0 ? q.x / q_norm : 1.0;
        int bin = static_cast<int>((cos_angle + 1.0) * 0.5 * n_bins);
        bin = std::clamp(bin, 0, n_bins - 1);
        sum_r[static_cast<std::size_t>(bin)] += q_norm / m_i;
        sum_cos[static_cast<std::size_t>(bin)] += cos_angle;
        ++count[static_cast<std::size_t>(bin)];
    }

    FluxProfile profile;
    profile.v = v;
    // Bin index grows with cos; emit in ascending theta instead.
    for (int b = n_bins - 1; b >= 0; --b) {
        const auto ub = static_cast<std::size_t>(b);
        if (count[ub] == 0) {
            continue;
        }
        FluxSample sample;
        const double n = static_cast<double>(count[ub]);
        const double mean_cos = std::clamp(sum_cos[ub] / n, -1.0, 1.0);
        sample.theta = std::acos(mean_cos);
        sample.r_empirical = sum_r[ub] / n;
        sample.r_closed_form = flux_radius(v, sample.theta);
        sample.r_em = em_radius(v, sample.theta);
        sample.count = count[ub];
        profile.max_relative_error =
            std::max(profile.max_relative_error,
                     std::abs(sample.r_empirical - sample.r_closed_form) /
                         sample.r_closed_form);
        profile.bins.push_back(sample);
    }
    return profile;
}

std::vector<double> apportion_charge(const Superposition& s, double q_total) {
    const double m_e = total_energy(s);
    std::vector<double> charges;
    charges.reserve(s.size());
    for (const WaveComponent& c : s.components()) {
        charges.push_back(q_total * c.magnitude() / m_e);
    }
    return charges;
}

EllipseFit fit_ellipse(const FluxProfile& profile) {
    // Normal equations of u x^2 + w y^2 = 1 over the bin points.
    double sxxxx = 0.0, sxxyy = 0.0, syyyy = 0.0, sxx = 0.0, syy = 0.0;
    for (const FluxSample& bin : profile.bins) {
        const double x = bin.r_empirical * std::cos(bin.theta);
        const double y = bin.r_empirical * std::sin(bin.theta);
        const double xx = x * x;
        const double yy = y * y;
        sxxxx += xx * xx;
        sxxyy += xx * yy;
        syyyy += yy * yy;
        sxx += xx;
        syy += yy;
    }
    const double det = sxxxx * syyyy - sxxyy * sxxyy;
    if (profile.bins.size() < 2 || det == 0.0) {
        throw std::invalid_argument("fit_ellipse: need at least two bins off the axes");
    }
    const double u = (syyyy * sxx - sxxyy * syy) / det;
    const double w = (sxxxx * syy - sxxyy * sxx) / det;
    if (!(u > 0.0) || !(w > 0.0)) {
        throw std::invalid_argument("fit_ellipse: profile is not an origin-centred ellipse");
    }
    EllipseFit fit;
    const double ax = 1.0 / std::sqrt(u);
    const double ay = 1.0 / std::sqrt(w);
    fit.semi_major = std::max(ax, ay);
    fit.semi_minor = std::min(ax, ay);
    fit.eccentricity =
        std::sqrt(std::max(0.0, 1.0 - (fit.semi_minor * fit.semi_minor) /
                                     (fit.semi_major * fit.semi_major)));
    return fit;
}

}  // namespace luminal
