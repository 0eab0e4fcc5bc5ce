#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "luminal/flux.hpp"
#include "luminal/kinematics.hpp"
#include "luminal/random.hpp"

using namespace luminal;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("flux radius closed form") {
    CHECK(flux_radius(0.0, 0.0) == 1.0);
    CHECK(flux_radius(0.0, 1.234) == 1.0);
    CHECK(flux_radius(0.6, 0.0) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(flux_radius(0.6, kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(flux_radius(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(flux_radius(-0.2, 0.0), std::invalid_argument);
}

TEST_CASE("flux radius symmetry and extrema") {
    for (double v : {0.25, 0.5, 0.75, 0.9, 0.99}) {
        const double gamma = 1.0 / std::sqrt(1.0 - v * v);
        CHECK(rel(flux_radius(v, 0.0), gamma) <= 1e-14);
        CHECK(rel(flux_radius(v, kPi), gamma) <= 1e-14);
        CHECK(rel(flux_radius(v, kPi / 2.0), 1.0) <= 1e-14);
        double previous = flux_radius(v, 0.0);
        for (int k = 1; k <= 32; ++k) {
            const double theta = kPi / 2.0 * k / 32.0;
            const double r = flux_radius(v, theta);
            CHECK(rel(r, flux_radius(v, -theta)) <= 1e-14);
            CHECK(rel(r, flux_radius(v, theta + kPi)) <= 1e-12);
            CHECK(r <= previous * (1.0 + 1e-15));
            CHECK(r >= 1.0 - 1e-15);
            previous = r;
        }
    }
}

TEST_CASE("em radius is the flux radius compressed by gamma") {
    CHECK(em_radius(0.0, 0.7) == 1.0);
    CHECK(em_radius(0.6, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(em_radius(0.6, kPi / 2.0) == doctest::Approx(0.8).epsilon(1e-15));
    for (double v : {0.1, 0.4, 0.8, 0.99}) {
        const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
        for (int k = 0; k <= 20; ++k) {
            const double theta = kPi * k / 20.0;
            CHECK(rel(em_radius(v, theta) * gamma, flux_radius(v, theta)) <= 1e-12);
        }
    }
}

TEST_CASE("balanced pair closed form") {
    SUBCASE("axial pair gives the Doppler factors") {
        const PairTransform t = pair_boost_closed_form({Vec3{1, 0, 0}, 1.0}, 0.6);
        CHECK(t.a == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(t.b == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(t.r == doctest::Approx(1.25).epsilon(1e-15));
    }
    SUBCASE("transverse pair keeps unit offset radius") {
        const PairTransform t = pair_boost_closed_form({Vec3{0, 1, 0}, 1.0}, 0.6);
        CHECK(t.a == doctest::Approx(1.25).epsilon(1e-12));
        CHECK(t.b == doctest::Approx(1.25).epsilon(1e-12));
        CHECK(t.r == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identity boost") {
        const PairTransform t =
            pair_boost_closed_form({Vec3{0.3, 0.7, -0.2}, 1.0}, 0.0);
        CHECK(t.a == 1.0);
        CHECK(t.b == 1.0);
        CHECK(t.r == 1.0);
    }
    SUBCASE("rest magnitude scales the whole transform") {
        const PairTransform unit = pair_boost_closed_form({Vec3{1, 1, 0}, 1.0}, 0.7);
        const PairTransform scaled = pair_boost_closed_form({Vec3{1, 1, 0}, 2.5}, 0.7);
        CHECK(rel(scaled.a, 2.5 * unit.a) <= 1e-15);
        CHECK(rel(scaled.b, 2.5 * unit.b) <= 1e-15);
        CHECK(rel(scaled.r, 2.5 * unit.r) <= 1e-15);
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(pair_boost_closed_form({Vec3{0, 0, 0}, 1.0}, 0.5),
                        std::invalid_argument);
        CHECK_THROWS_AS(pair_boost_closed_form({Vec3{1, 0, 0}, 0.0}, 0.5),
                        std::invalid_argument);
    }
}

TEST_CASE("pair transform satisfies the offset-triangle geometry") {
    for (double v : {0.3, 0.6, 0.9}) {
        const double gamma = 1.0 / std::sqrt(1.0 - v * v);
        for (double theta : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0}) {
            const double m = 1.7;
            const double c = std::cos(theta);
            const PairTransform t =
                pair_boost_closed_form({Vec3{c, std::sin(theta), 0.0}, m}, v);
            // Energy splits around the shared centre: a + b = 2 gamma m.
            CHECK(rel(t.a + t.b, 2.0 * gamma * m) <= 1e-14);
            // Law of cosines against the boosted offset angle.
            const double cos_boosted =
                gamma * c / std::sqrt(gamma * gamma * c * c + 1.0 - c * c);
            const double offset = gamma * v * m;
            const double lhs_a = t.a * t.a;
            const double rhs_a =
                t.r * t.r + offset * offset + 2.0 * offset * t.r * cos_boosted;
            CHECK(rel(lhs_a, rhs_a) <= 1e-12);
            const double lhs_b = t.b * t.b;
            const double rhs_b =
                t.r * t.r + offset * offset - 2.0 * offset * t.r * cos_boosted;
            CHECK(rel(lhs_b, rhs_b) <= 1e-12);
        }
    }
}

TEST_CASE("closed form agrees with the integrated dynamics") {
    for (double v : {0.3, 0.6, 0.9}) {
        for (double theta : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0}) {
            const BalancedPair pair{Vec3{std::cos(theta), std::sin(theta), 0.0}, 1.0};
            const PairTransform ct = pair_boost_closed_form(pair, v);
            const Superposition boosted =
                boost(make_pair_superposition(pair), Vec3{v, 0, 0}, 1e-9).final;
            CHECK(rel(boosted.components()[0].magnitude(), ct.a) <= 1e-6);
            CHECK(rel(boosted.components()[1].magnitude(), ct.b) <= 1e-6);
            const double gamma = 1.0 / std::sqrt(1.0 - v * v);
            Vec3 q = boosted.components()[0].momentum;
            q.x -= gamma * v;
            CHECK(rel(q.norm(), ct.r) <= 1e-6);
        }
    }
}

TEST_CASE("energy of a boosted pair grows by exactly gamma") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const double v = rng.uniform(0.1, 0.9);
        const BalancedPair pair{rng.unit_vector(), rng.uniform(0.5, 2.0)};
        const Superposition boosted =
            boost(make_pair_superposition(pair), Vec3{v, 0, 0}, 1e-9).final;
        const double gamma = 1.0 / std::sqrt(1.0 - v * v);
        CHECK(rel(effective_mass(boosted), 2.0 * pair.rest_magnitude * gamma) <= 1e-8);
    }
}

TEST_CASE("isotropic rest ensembles") {
    const Superposition s = make_isotropic_rest(100, 0.5, 42);
    REQUIRE(s.size() == 200);
    CHECK(total_momentum(s) == Vec3{0, 0, 0});
    for (const WaveComponent& c : s.components()) {
        CHECK(rel(c.magnitude(), 0.5) <= 1e-15);
    }

    SUBCASE("same seed reproduces the ensemble bitwise") {
        const Superposition t = make_isotropic_rest(100, 0.5, 42);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.components()[i].momentum == t.components()[i].momentum);
        }
    }
    SUBCASE("different seeds differ") {
        const Superposition t = make_isotropic_rest(100, 0.5, 43);
        CHECK(s.components()[0].momentum != t.components()[0].momentum);
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(make_isotropic_rest(0, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_isotropic_rest(4, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_isotropic_rest(4, -1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("isotropic directions pass a sphere-uniformity chi-square test") {
    // 48 equal-area cells (8 slabs in cos(polar) x 6 azimuth sectors) over
    // the 10^4 primary draws; 0.99 quantile of chi-square with 47 dof.
    const Superposition s = make_isotropic_rest(10000, 1.0, 1);
    std::vector<int> counts(48, 0);
    for (std::size_t i = 0; i < s.size(); i += 2) {
        const Vec3 d = s.components()[i].direction();
        int band = static_cast<int>((d.z + 1.0) * 0.5 * 8.0);
        band = std::min(band, 7);
        const double phi = std::atan2(d.y, d.x) + kPi;
        int sector = static_cast<int>(phi / (2.0 * kPi) * 6.0);
        sector = std::min(sector, 5);
        ++counts[static_cast<std::size_t>(band * 6 + sector)];
    }
    const double expected = 10000.0 / 48.0;
    double chi2 = 0.0;
    for (int c : counts) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 72.44330737654825);
}

TEST_CASE("ellipsoid profile of a rest particle is the unit sphere") {
    const Superposition rest = make_isotropic_rest(2000, 1.0, 3);
    const FluxProfile profile = ellipsoid_profile(rest, 0.0, 16);
    CHECK(profile.v == 0.0);
    CHECK(!profile.bins.empty());
    std::int64_t total = 0;
    for (const FluxSample& bin : profile.bins) {
        CHECK(std::abs(bin.r_empirical - 1.0) <= 1e-9);
        CHECK(std::abs(bin.r_closed_form - 1.0) <= 1e-15);
        total += bin.count;
    }
    CHECK(total == 4000);
    CHECK(profile.max_relative_error <= 1e-9);
}

TEST_CASE("ellipsoid profile matches the closed form after a boost") {
    const Superposition rest = make_isotropic_rest(2000, 1.0, 9);
    const FluxProfile profile = ellipsoid_profile(rest, 0.6, 16);
    CHECK(profile.max_relative_error <= 0.01);
    double previous = -1.0;
    for (const FluxSample& bin : profile.bins) {
        CHECK(bin.theta > previous);
        previous = bin.theta;
        CHECK(bin.r_em == doctest::Approx(bin.r_closed_form * 0.8).epsilon(1e-12));
    }
}

TEST_CASE("ellipsoid profile rejects moving input") {
    const Superposition moving =
        Superposition::from_momenta({Vec3{2, 0, 0}, Vec3{-0.5, 0, 0}});
    CHECK_THROWS_AS(ellipsoid_profile(moving, 0.5, 8), std::invalid_argument);
    const Superposition rest =
        Superposition::from_momenta({Vec3{1, 0, 0}, Vec3{-1, 0, 0}});
    CHECK_THROWS_AS(ellipsoid_profile(rest, 0.5, 0), std::invalid_argument);
}

TEST_CASE("charge apportionment follows the momentum shares") {
    const Superposition rest =
        Superposition::from_momenta({Vec3{1, 0, 0}, Vec3{-1, 0, 0}});
    const std::vector<double> equal = apportion_charge(rest, 1.0);
    CHECK(equal[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(equal[1] == doctest::Approx(0.5).epsilon(1e-15));

    const Superposition moving =
        Superposition::from_momenta({Vec3{2, 0, 0}, Vec3{-0.5, 0, 0}});
    const std::vector<double> shares = apportion_charge(moving, 1.0);
    CHECK(shares[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(shares[1] == doctest::Approx(0.2).epsilon(1e-15));

    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec3> momenta;
        for (int i = 0; i < 6; ++i) {
            const Vec3 p = rng.unit_vector() * rng.uniform(0.5, 2.0);
            momenta.push_back(p);
            momenta.push_back(-p);
        }
        const Superposition s = Superposition::from_momenta(momenta);
        const double q_total = rng.uniform(-5.0, 5.0);
        double sum = 0.0;
        for (double q : apportion_charge(s, q_total)) {
            sum += q;
        }
        CHECK(std::abs(sum - q_total) <= 1e-12 * std::max(1.0, std::abs(q_total)));

        const Superposition boosted = boost(s, Vec3{0.0, 0.6, 0.0}, 1e-9).final;
        double boosted_sum = 0.0;
        for (double q : apportion_charge(boosted, q_total)) {
            boosted_sum += q;
        }
        CHECK(std::abs(boosted_sum - q_total) <=
              1e-12 * std::max(1.0, std::abs(q_total)));
    }
}

TEST_CASE("ellipse fit recovers the exact flux surface eccentricity") {
    for (double v : {0.0, 0.3, 0.6, 0.9}) {
        FluxProfile profile;
        profile.v = v;
        for (int k = 0; k < 64; ++k) {
            FluxSample bin;
            bin.theta = kPi * (k + 0.5) / 64.0;
            bin.r_empirical = flux_radius(v, bin.theta);
            bin.r_closed_form = bin.r_empirical;
            bin.r_em = em_radius(v, bin.theta);
            bin.count = 1;
            profile.bins.push_back(bin);
        }
        const EllipseFit fit = fit_ellipse(profile);
        const double gamma = 1.0 / std::sqrt(1.0 - v * v);
        // Compare squared eccentricities: ecc itself has unbounded slope in
        // the axis ratio at ecc = 0, so roundoff there inflates to sqrt(eps).
        CHECK(std::abs(fit.eccentricity * fit.eccentricity - v * v) <= 1e-12);
        CHECK(rel(fit.semi_major, gamma) <= 1e-9);
        CHECK(std::abs(fit.semi_minor - 1.0) <= 1e-9);
    }
}

TEST_CASE("ellipse fit eccentricity rises with speed on sampled ensembles") {
    const Superposition rest = make_isotropic_rest(2000, 1.0, 5);
    double previous = -1.0;
    for (double v : {0.0, 0.3, 0.6, 0.9}) {
        const EllipseFit fit = fit_ellipse(ellipsoid_profile(rest, v, 16));
        CHECK(std::abs(fit.eccentricity - v) <= 0.02);
        CHECK(fit.eccentricity > previous);
        previous = fit.eccentricity;
    }
}

TEST_CASE("ellipse fit rejects degenerate profiles") {
    FluxProfile profile;
    profile.v = 0.5;
    FluxSample only;
    only.theta = 0.0;
    only.r_empirical = 2.0;
    profile.bins.push_back(only);
    CHECK_THROWS_AS(fit_ellipse(profile), std::invalid_argument);
}
