#include "luminal/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "luminal/clock.hpp"
#include "luminal/flux.hpp"
#include "luminal/format.hpp"
#include "luminal/kinematics.hpp"
#include "luminal/mbr.hpp"
#include "luminal/random.hpp"

namespace luminal {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string bound_detail(double measured, double bound) {
    return "measured " + format_double(measured) + ", bound " + format_double(bound);
}

std::uint64_t sub_seed(Rng& rng) {
    return static_cast<std::uint64_t>(rng.uniform() * 1e9);
}

Superposition random_superposition(Rng& rng, int n_min, int n_max, double mag_lo,
                                   double mag_hi) {
    const int n = n_min + static_cast<int>(rng.uniform() * (n_max - n_min + 1));
    std::vector<Vec3> momenta;
    momenta.reserve(static_cast<std::size_t>(n));
    const double log_lo = std::log(mag_lo);
    const double log_hi = std::log(mag_hi);
    for (int i = 0; i < n; ++i) {
        const double mag = std::exp(rng.uniform(log_lo, log_hi));
        momenta.push_back(rng.unit_vector() * mag);
    }
    return Superposition::from_momenta(momenta);
}

struct Runner {
    std::uint64_t seed;
    std::uint64_t next_stream = 0;
    std::vector<CheckResult> results;

    Rng stream() { return Rng(Rng::derive_seed(seed, next_stream++)); }

    // A check returns (worst measured value, bound); it passes when
    // measured <= bound. Exceptions fail the check with their message.
    void run(const std::string& name,
             const std::function<std::pair<double, double>(Rng&)>& check) {
        Rng rng = stream();
        CheckResult result;
        result.name = name;
        try {
            const auto [measured, bound] = check(rng);
            result.passed = measured <= bound;
            result.detail = bound_detail(measured, bound);
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(result));
    }
};

}  // namespace

std::vector<CheckResult> run_selfchecks(std::uint64_t seed) {
    Runner runner{seed, 0, {}};

    runner.run("momentum_additivity", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const Superposition s = random_superposition(rng, 2, 32, 1e-2, 1e2);
            const Vec3 impulse = rng.unit_vector() * rng.uniform(0.0, 10.0);
            const Superposition stepped = apportion_step(s, impulse);
            const double err =
                (total_momentum(stepped) - (total_momentum(s) + impulse)).norm() /
                (effective_mass(s) + impulse.norm());
            worst = std::max(worst, err);
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("energy_momentum_inequality", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Superposition s = random_superposition(rng, 2, 64, 1e-3, 1e3);
            const double slack =
                (total_momentum(s).norm() - effective_mass(s)) / effective_mass(s);
            worst = std::max(worst, slack);
        }
        return std::pair{worst, 1e-15};
    });

    runner.run("invariant_rest_mass", [](Rng& rng) {
        const Superposition s = make_isotropic_rest(8, 1.0, sub_seed(rng));
        const BoostResult r = boost(s, Vec3{0.9, 0.0, 0.0}, 1e-9);
        return std::pair{rel_diff(r.rest_mass_final, r.rest_mass_initial), 1e-8};
    });

    runner.run("relativistic_momentum_closure", [](Rng& rng) {
        const Superposition s = make_isotropic_rest(8, 2.0, sub_seed(rng));
        const Vec3 v{0.3, -0.4, 0.6};
        const BoostResult r = boost(s, v, 1e-9);
        const double gamma = 1.0 / std::sqrt(1.0 - v.norm_squared());
        const Vec3 expected = v * (gamma * r.rest_mass_initial);
        return std::pair{(total_momentum(r.final) - expected).norm() /
                             effective_mass(r.final),
                         1e-8};
    });

    runner.run("scale_covariance", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Superposition s = random_superposition(rng, 2, 32, 1e-1, 1e1);
            const double lambda = rng.uniform(1e-3, 1e3);
            std::vector<Vec3> scaled;
            for (const WaveComponent& c : s.components()) {
                scaled.push_back(c.momentum * lambda);
            }
            const Superposition t = Superposition::from_momenta(scaled);
            worst = std::max(worst, rel_diff(effective_mass(t), lambda * effective_mass(s)));
            worst = std::max(worst, rel_diff(rest_mass(t), lambda * rest_mass(s)));
            worst = std::max(worst,
                             (total_momentum(t) - total_momentum(s) * lambda).norm() /
                                 (lambda * effective_mass(s)));
            worst = std::max(worst, (group_velocity(t) - group_velocity(s)).norm());
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("pair_independence", [](Rng& rng) {
        const Vec3 v{0.5, 0.2, -0.1};
        std::vector<Vec3> all;
        Vec3 p_sum{0.0, 0.0, 0.0};
        double m_e_sum = 0.0;
        for (int k = 0; k < 8; ++k) {
            const BalancedPair pair{rng.unit_vector(), rng.uniform(0.5, 2.0)};
            const Superposition alone = make_pair_superposition(pair);
            const Superposition boosted = boost(alone, v, 1e-9).final;
            p_sum = p_sum + total_momentum(boosted);
            m_e_sum += effective_mass(boosted);
            for (const WaveComponent& c : alone.components()) {
                all.push_back(c.momentum);
            }
        }
        const Superposition whole =
            boost(Superposition::from_momenta(all), v, 1e-9).final;
        const double p_err = (total_momentum(whole) - p_sum).norm() / m_e_sum;
        const double e_err = rel_diff(effective_mass(whole), m_e_sum);
        return std::pair{std::max(p_err, e_err), 1e-9};
    });

    runner.run("clock_identity", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const Superposition s = random_superposition(rng, 2, 64, 1e-3, 1e3);
            worst = std::max(worst, zitter_speed(s).residual);
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("partition_of_motion", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const Superposition s = random_superposition(rng, 2, 64, 1e-2, 1e2);
            const ClockReport r = zitter_speed(s);
            worst = std::max(worst, std::abs(r.v_z * r.v_z + r.speed * r.speed - 1.0));
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("dirac_scale_matches_zitter", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Superposition s = random_superposition(rng, 2, 32, 1e-2, 1e2);
            const ClockReport r = zitter_speed(s);
            worst = std::max(worst, std::abs(dirac_zitter_scale(r.speed) - r.v_z));
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("equal_split_equivalence", [](Rng& rng) {
        const Vec3 axis = rng.unit_vector();
        const BalancedPair ballast{rng.unit_vector(), 2.5};
        std::vector<Vec3> split;
        for (int i = 0; i < 5; ++i) {
            split.push_back(axis);
        }
        std::vector<Vec3> merged{axis * 5.0};
        const Superposition pair = make_pair_superposition(ballast);
        for (const WaveComponent& c : pair.components()) {
            split.push_back(c.momentum);
            merged.push_back(c.momentum);
        }
        const ClockReport a = zitter_speed(Superposition::from_momenta(split));
        const ClockReport b = zitter_speed(Superposition::from_momenta(merged));
        const double worst =
            std::max(std::abs(a.speed - b.speed), std::abs(a.v_z - b.v_z));
        return std::pair{worst, 1e-12};
    });

    runner.run("flux_radius_shape", [](Rng&) {
        double worst = 0.0;
        for (double v : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99}) {
            const double gamma = 1.0 / std::sqrt(1.0 - v * v);
            worst = std::max(worst, rel_diff(flux_radius(v, 0.0), gamma));
            worst = std::max(worst, rel_diff(flux_radius(v, kPi / 2.0), 1.0));
            worst = std::max(worst, rel_diff(flux_radius(v, kPi), gamma));
            double previous = flux_radius(v, 0.0);
            for (int k = 1; k <= 16; ++k) {
                const double theta = kPi / 2.0 * k / 16.0;
                const double r = flux_radius(v, theta);
                worst = std::max(worst, rel_diff(r, flux_radius(v, -theta)));
                if (v > 0.0 && r > previous) {
                    worst = std::max(worst, r - previous);
                }
                previous = r;
            }
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("pair_closed_form_vs_integration", [](Rng&) {
        double worst = 0.0;
        for (double v : {0.3, 0.6, 0.9}) {
            for (double theta : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0}) {
                const BalancedPair pair{Vec3{std::cos(theta), std::sin(theta), 0.0}, 1.0};
                const PairTransform ct = pair_boost_closed_form(pair, v);
                const Superposition boosted =
                    boost(make_pair_superposition(pair), Vec3{v, 0.0, 0.0}, 1e-9).final;
                worst = std::max(
                    worst, rel_diff(boosted.components()[0].magnitude(), ct.a));
                worst = std::max(
                    worst, rel_diff(boosted.components()[1].magnitude(), ct.b));
                const double gamma = 1.0 / std::sqrt(1.0 - v * v);
                Vec3 q = boosted.components()[0].momentum;
                q.x -= gamma * v;
                worst = std::max(worst, rel_diff(q.norm(), ct.r));
            }
        }
        return std::pair{worst, 1e-6};
    });

    runner.run("energy_ratio_law", [](Rng& rng) {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const double v = rng.uniform(0.1, 0.9);
            const BalancedPair pair{rng.unit_vector(), rng.uniform(0.5, 2.0)};
            const Superposition boosted =
                boost(make_pair_superposition(pair), Vec3{v, 0.0, 0.0}, 1e-9).final;
            const double gamma = 1.0 / std::sqrt(1.0 - v * v);
            worst = std::max(worst, rel_diff(effective_mass(boosted) /
                                                 (2.0 * pair.rest_magnitude),
                                             gamma));
        }
        return std::pair{worst, 1e-8};
    });

    runner.run("em_compression_exact", [](Rng&) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double v = 0.999 * i / 99.0;
            const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
            for (int j = 0; j < 100; ++j) {
                const double theta = kPi * j / 99.0;
                worst = std::max(
                    worst, rel_diff(em_radius(v, theta) * gamma, flux_radius(v, theta)));
            }
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("charge_invariance", [](Rng& rng) {
        double worst = 0.0;
        const double q_total = 3.7;
        for (int trial = 0; trial < 10; ++trial) {
            const Superposition s = random_superposition(rng, 2, 16, 1e-1, 1e1);
            double sum = 0.0;
            for (double q : apportion_charge(s, q_total)) {
                sum += q;
            }
            worst = std::max(worst, rel_diff(sum, q_total));
            if (rest_mass(s) > 1e-6 * effective_mass(s)) {
                const Superposition boosted = boost(s, Vec3{0.6, 0.0, 0.0}, 1e-9).final;
                double boosted_sum = 0.0;
                for (double q : apportion_charge(boosted, q_total)) {
                    boosted_sum += q;
                }
                worst = std::max(worst, rel_diff(boosted_sum, q_total));
            }
        }
        return std::pair{worst, 1e-12};
    });

    runner.run("sampler_determinism", [](Rng& rng) {
        const std::uint64_t shared_seed = sub_seed(rng);
        const Superposition a = make_isotropic_rest(50, 1.0, shared_seed);
        const Superposition b = make_isotropic_rest(50, 1.0, shared_seed);
        double worst = total_momentum(a).norm();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!(a.components()[i].momentum == b.components()[i].momentum)) {
                worst = 1.0;
            }
        }
        const auto sky_a = synthesize_sky(Vec3{1e-3, 0.0, 0.0}, 2.725, 100, 1e-6,
                                          shared_seed);
        const auto sky_b = synthesize_sky(Vec3{1e-3, 0.0, 0.0}, 2.725, 100, 1e-6,
                                          shared_seed);
        for (std::size_t i = 0; i < sky_a.size(); ++i) {
            if (!(sky_a[i].direction == sky_b[i].direction) ||
                sky_a[i].temperature != sky_b[i].temperature) {
                worst = 1.0;
            }
        }
        return std::pair{worst, 0.0};
    });

    runner.run("mbr_zero_velocity_fixed_point", [](Rng& rng) {
        FrameSearchOptions options;
        options.n_samples = 500;
        options.seed = sub_seed(rng);
        const FrameEstimate e = find_null_frame(Vec3{0.0, 0.0, 0.0}, 2.725, options);
        const double worst =
            std::max(e.beta.norm(), e.iterations <= 1 ? 0.0 : 1.0);
        return std::pair{worst, 1e-12};
    });

    runner.run("mbr_antisymmetry", [](Rng& rng) {
        const Vec3 beta = rng.unit_vector() * 8e-4;
        const std::uint64_t shared_seed = sub_seed(rng);
        const DipoleFit plus =
            fit_dipole(synthesize_sky(beta, 2.725, 2000, 0.0, shared_seed));
        const DipoleFit minus =
            fit_dipole(synthesize_sky(-beta, 2.725, 2000, 0.0, shared_seed));
        const double worst = (plus.dipole + minus.dipole).norm() / plus.dipole.norm();
        return std::pair{worst, 1e-9};
    });

    runner.run("mbr_monopole_stability", [](Rng& rng) {
        const double beta_mag = 1e-2;
        const Vec3 beta = rng.unit_vector() * beta_mag;
        const DipoleFit fit =
            fit_dipole(synthesize_sky(beta, 2.725, 2000, 0.0, sub_seed(rng)));
        return std::pair{std::abs(fit.monopole - 2.725) / 2.725,
                         2.0 * beta_mag * beta_mag};
    });

    runner.run("mbr_monotone_convergence", [](Rng& rng) {
        const Vec3 truth = rng.unit_vector() * 1.1674743331935322e-3;
        const std::uint64_t base_seed = sub_seed(rng);
        Vec3 correction{0.0, 0.0, 0.0};
        double previous_ratio = 0.0;
        double worst = 0.0;
        for (int round = 0; round < 4; ++round) {
            const Vec3 current = compose_velocities(truth, correction);
            const DipoleFit fit = fit_dipole(synthesize_sky(
                current, 2.725, 10000, 0.0,
                Rng::derive_seed(base_seed, static_cast<std::uint64_t>(round))));
            const double ratio = fit.dipole.norm() / fit.monopole;
            if (round > 0 && ratio > previous_ratio / 10.0) {
                worst = std::max(worst, ratio / previous_ratio);
            }
            if (ratio < 1e-9) {
                return std::pair{worst, 0.1};
            }
            previous_ratio = ratio;
            correction = compose_velocities(correction, -(fit.dipole / fit.monopole));
        }
        return std::pair{1.0, 0.1};
    });

    return runner.results;
}

}  // namespace luminal
