#include "luminal/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "luminal/errors.hpp"

namespace luminal {

namespace {

double rest_mass_of(double m_e, const Vec3& p_total) {
    const double p = p_total.norm();
    // Product form keeps precision when m_e and |P| nearly cancel.
    const double radicand = (m_e - p) * (m_e + p);
    if (radicand < 0.0) {
        if (-radicand <= 1e-12 * m_e * m_e) {
            return 0.0;
        }
        throw std::domain_error(
            "rest_mass: |P| exceeds total energy beyond roundoff (|P| = " +
            std::to_string(p) + ", m_e = " + std::to_string(m_e) + ")");
    }
    return std::sqrt(radicand);
}

// Component momenta unpacked into coordinate arrays; keeps the integrator's
// norm loops straight-line over contiguous doubles.
struct MomentumArrays {
    std::vector<double> x, y, z;

    explicit MomentumArrays(const Superposition& s) {
        const std::size_t n = s.size();
        x.resize(n);
        y.resize(n);
        z.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& p = s.components()[i].momentum;
            x[i] = p.x;
            y[i] = p.y;
            z[i] = p.z;
        }
    }

    std::size_t size() const { return x.size(); }

    Vec3 total() const {
        Vec3 sum{0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < size(); ++i) {
            sum.x += x[i];
            sum.y += y[i];
            sum.z += z[i];
        }
        return sum;
    }

    double magnitude_sum() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            sum += std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
        }
        return sum;
    }

    std::vector<Vec3> to_momenta() const {
        std::vector<Vec3> momenta(size());
        for (std::size_t i = 0; i < size(); ++i) {
            momenta[i] = Vec3{x[i], y[i], z[i]};
        }
        return momenta;
    }
};

// Integrator scratch: stage state and the four stage weight vectors.
struct Rk4Scratch {
    std::vector<double> tx, ty, tz;
    std::vector<double> w1, w2, w3, w4;

    explicit Rk4Scratch(std::size_t n)
        : tx(n), ty(n), tz(n), w1(n), w2(n), w3(n), w4(n) {}
};

// Fills w[i] = |p_i| / m_e for the given state and returns m_e. The weights
// sum to one by construction; that identity is what makes every RK4 stage,
// and hence the combined update, transfer exactly its share of the impulse
// to the total momentum.
double stage_weights(const std::vector<double>& px, const std::vector<double>& py,
                     const std::vector<double>& pz, std::vector<double>& w) {
    const std::size_t n = px.size();
    double m_e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::sqrt(px[i] * px[i] + py[i] * py[i] + pz[i] * pz[i]);
        m_e += w[i];
    }
    const double inv = 1.0 / m_e;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] *= inv;
    }
    return m_e;
}

// Advances one impulse sub-step of dp_i/dtau = impulse * |p_i| / m_e with a
// classical RK4 update. Expects scratch.w1 already filled for the current
// state (its computation doubles as the m_e evaluation that sized the step).
void rk4_apply(MomentumArrays& p, const Vec3& impulse, Rk4Scratch& s) {
    const std::size_t n = p.size();

    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * s.w1[i];
        s.tx[i] = p.x[i] + impulse.x * h;
        s.ty[i] = p.y[i] + impulse.y * h;
        s.tz[i] = p.z[i] + impulse.z * h;
    }
    stage_weights(s.tx, s.ty, s.tz, s.w2);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * s.w2[i];
        s.tx[i] = p.x[i] + impulse.x * h;
        s.ty[i] = p.y[i] + impulse.y * h;
        s.tz[i] = p.z[i] + impulse.z * h;
    }
    stage_weights(s.tx, s.ty, s.tz, s.w3);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = s.w3[i];
        s.tx[i] = p.x[i] + impulse.x * h;
        s.ty[i] = p.y[i] + impulse.y * h;
        s.tz[i] = p.z[i] + impulse.z * h;
    }
    stage_weights(s.tx, s.ty, s.tz, s.w4);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = (s.w1[i] + 2.0 * s.w2[i] + 2.0 * s.w3[i] + s.w4[i]) / 6.0;
        p.x[i] += impulse.x * h;
        p.y[i] += impulse.y * h;
        p.z[i] += impulse.z * h;
    }
}

}  // namespace

Vec3 total_momentum(const Superposition& s) {
    Vec3 sum{0.0, 0.0, 0.0};
    for (const WaveComponent& c : s.components()) {
        sum = sum + c.momentum;
    }
    return sum;
}

double total_energy(const Superposition& s) {
    double sum = 0.0;
    for (const WaveComponent& c : s.components()) {
        sum += c.magnitude();
    }
    return sum;
}

Vec3 group_velocity(const Superposition& s) {
    return total_momentum(s) / total_energy(s);
}

double effective_mass(const Superposition& s) {
    return total_energy(s);
}

double rest_mass(const Superposition& s) {
    return rest_mass_of(total_energy(s), total_momentum(s));
}

Superposition apportion_step(const Superposition& s, const Vec3& impulse) {
    if (!impulse.is_finite()) {
        throw std::invalid_argument("apportion_step: impulse is not finite");
    }
    const double m_e = total_energy(s);
    std::vector<Vec3> momenta;
    momenta.reserve(s.size());
    for (const WaveComponent& c : s.components()) {
        momenta.push_back(c.momentum + impulse * (c.magnitude() / m_e));
    }
    for (std::size_t i = 0; i < momenta.size(); ++i) {
        if (momenta[i].norm() < 1e-15 * m_e) {
            throw std::domain_error(
                "apportion_step: impulse too large for one step, component " +
                std::to_string(i) + " driven to zero magnitude");
        }
    }
    return Superposition::from_momenta(momenta);
}

BoostResult boost(const Superposition& s, const Vec3& target_velocity, double tol,
                  const BoostOptions& options) {
    if (!target_velocity.is_finite()) {
        throw std::invalid_argument("boost: target velocity is not finite");
    }
    const double v_target = target_velocity.norm();
    if (v_target >= kMaxBoostSpeed) {
        throw std::invalid_argument("boost: target speed " + std::to_string(v_target) +
                                    " is at or above the 1 - 1e-9 ceiling");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("boost: tolerance must be positive");
    }
    if (!(options.max_step_fraction > 0.0)) {
        throw std::invalid_argument("boost: max_step_fraction must be positive");
    }

    MomentumArrays p(s);
    {
        const double m_e0 = p.magnitude_sum();
        const double m0 = rest_mass_of(m_e0, p.total());
        if (m0 <= 1e-12 * m_e0) {
            throw std::invalid_argument(
                "boost: massless superposition has no rest frame");
        }
    }

    const double gamma = 1.0 / std::sqrt((1.0 - v_target) * (1.0 + v_target));

    BoostResult result{Superposition::from_momenta(p.to_momenta()), 0, 0.0, 0.0, 0.0};
    result.rest_mass_initial = rest_mass_of(p.magnitude_sum(), p.total());

    Rk4Scratch scratch(p.size());

    // Outer passes re-aim at the target momentum with the current rest mass
    // (conserved, so the first pass does nearly all the work; later passes
    // mop up the roundoff a long integration leaves behind).
    constexpr int kMaxPasses = 8;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        Vec3 p_total = p.total();
        const double m_e = p.magnitude_sum();
        const double m0 = rest_mass_of(m_e, p_total);
        const Vec3 p_target = target_velocity * (gamma * m0);
        const Vec3 delta = p_target - p_total;
        const double delta_mag = delta.norm();

        const Vec3 velocity = p_total / m_e;
        if ((velocity - target_velocity).norm() <= tol && delta_mag <= tol * m_e) {
            break;
        }
        if (delta_mag == 0.0) {
            break;
        }

        const Vec3 direction = delta / delta_mag;
        const Vec3 p_start = p_total;
        double remaining = delta_mag;
        while (remaining > 0.0) {
            if (result.steps_taken >= options.max_steps) {
                throw ConvergenceError(
                    "boost: step budget exhausted after " +
                    std::to_string(result.steps_taken) +
                    " sub-steps (remaining |dP| = " + std::to_string(remaining) + ")");
            }
            // Stage 1 doubles as the current-m_e evaluation that caps the step.
            const double m_e_now = stage_weights(p.x, p.y, p.z, scratch.w1);
            const double step = std::min(remaining, options.max_step_fraction * m_e_now);
            rk4_apply(p, direction * step, scratch);
            remaining -= step;
            ++result.steps_taken;

            const Vec3 expected = p_start + direction * (delta_mag - remaining);
            result.max_momentum_residual =
                std::max(result.max_momentum_residual, (p.total() - expected).norm());
        }
    }

    const Vec3 p_final = p.total();
    const double m_e_final = p.magnitude_sum();
    result.rest_mass_final = rest_mass_of(m_e_final, p_final);
    result.final = Superposition::from_momenta(p.to_momenta());

    const double v_err = (p_final / m_e_final - target_velocity).norm();
    if (v_err > tol) {
        throw ConvergenceError("boost: final velocity misses target by " +
                               std::to_string(v_err) + " (tol " + std::to_string(tol) +
                               ")");
    }
    const double drift = std::abs(result.rest_mass_final - result.rest_mass_initial) /
                         result.rest_mass_initial;
    if (drift > 10.0 * tol) {
        throw ConvergenceError("boost: rest mass drifted by relative " +
                               std::to_string(drift));
    }
    const Vec3 p_expected = target_velocity * (gamma * result.rest_mass_initial);
    const double closure = (p_final - p_expected).norm();
    if (closure > tol * m_e_final) {
        throw ConvergenceError("boost: momentum misses gamma m0 V by " +
                               std::to_string(closure));
    }
    return result;
}

}  // namespace luminal
