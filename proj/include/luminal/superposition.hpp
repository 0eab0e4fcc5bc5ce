#pragma once

#include <cstddef>
#include <vector>

#include "luminal/vec3.hpp"

namespace luminal {

/// One photonic momentum carrier. The momentum vector fully determines the
/// component: its speed is fixed at c, so energy equals momentum magnitude
/// and the velocity is the unit momentum direction.
struct WaveComponent {
    Vec3 momentum;

    double magnitude() const { return momentum.norm(); }
    double energy() const { return magnitude(); }
    Vec3 direction() const { return momentum.normalized(); }
};

/// A particle modelled as an ordered collection of wave components.
///
/// Invariants enforced at construction:
///   - at least one component,
///   - every component momentum finite with strictly positive magnitude
///     (a zero-magnitude component has no direction of propagation).
///
/// Magnitudes are computed through squared norms, so components smaller than
/// about 1e-154 (whose squares underflow to zero) are rejected rather than
/// silently treated as zero.
class Superposition {
public:
    explicit Superposition(std::vector<WaveComponent> components);

    /// Convenience constructor from raw momentum vectors.
    static Superposition from_momenta(const std::vector<Vec3>& momenta);

    const std::vector<WaveComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }

private:
    std::vector<WaveComponent> components_;
};

}  // namespace luminal
