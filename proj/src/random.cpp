#include "luminal/random.hpp"

#include <cmath>
#include <numbers>

namespace luminal {

double Rng::uniform() {
    // Top 53 bits give a dyadic rational in [0, 1); identical on every
    // platform, unlike std::uniform_real_distribution.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller with u1 bounded away from zero so the log stays finite.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

Vec3 Rng::unit_vector() {
    while (true) {
        const Vec3 v{normal(), normal(), normal()};
        const double n = v.norm();
        if (n > 1e-6) {
            return v / n;
        }
    }
}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finaliser over the combined value: cheap, well mixed, and
    // stable across platforms.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace luminal
