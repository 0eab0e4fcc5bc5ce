#include "luminal/clock.hpp"

#include <cmath>
#include <stdexcept>

#include "luminal/kinematics.hpp"

namespace luminal {

Vec3 internal_velocity(const WaveComponent& component, const Vec3& group_velocity) {
    return component.direction() - group_velocity;
}

ClockReport zitter_speed(const Superposition& s) {
    const double m_e = total_energy(s);
    const Vec3 v_group = total_momentum(s) / m_e;

    double weighted = 0.0;
    for (const WaveComponent& c : s.components()) {
        weighted += c.magnitude() * internal_velocity(c, v_group).norm_squared();
    }

    ClockReport report;
    report.speed = v_group.norm();
    report.v_z = std::sqrt(weighted / m_e);
    const double radicand = std::max(0.0, (1.0 - report.speed) * (1.0 + report.speed));
    report.gamma = 1.0 / std::sqrt(radicand);
    report.residual = std::abs(report.v_z - std::sqrt(radicand));
    return report;
}

double dirac_zitter_scale(double v_group) {
    if (!(v_group >= 0.0 && v_group <= 1.0)) {
        throw std::invalid_argument("dirac_zitter_scale: speed must lie in [0, 1]");
    }
    return std::sqrt((1.0 - v_group) * (1.0 + v_group));
}

std::vector<ClockReport> dilation_sweep(const Superposition& s,
                                        const std::vector<double>& speeds,
                                        double boost_tol) {
    std::vector<ClockReport> reports;
    reports.reserve(speeds.size());
    for (double v : speeds) {
        if (!(v >= 0.0 && v < kMaxBoostSpeed)) {
            throw std::invalid_argument("dilation_sweep: speed must lie in [0, 1 - 1e-9)");
        }
        const BoostResult boosted = boost(s, Vec3{v, 0.0, 0.0}, boost_tol);
        reports.push_back(zitter_speed(boosted.final));
    }
    return reports;
}

}  // namespace luminal
