#include "luminal/superposition.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace luminal {

Superposition::Superposition(std::vector<WaveComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("superposition needs at least one component");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const Vec3& p = components_[i].momentum;
        if (!p.is_finite()) {
            throw std::invalid_argument("component " + std::to_string(i) +
                                        ": momentum is not finite");
        }
        if (!(p.norm_squared() > 0.0)) {
            throw std::invalid_argument(
                "component " + std::to_string(i) +
                (p == Vec3{0.0, 0.0, 0.0}
                     ? ": momentum magnitude must be positive"
                     : ": momentum magnitude underflows double precision"));
        }
    }
}

Superposition Superposition::from_momenta(const std::vector<Vec3>& momenta) {
    std::vector<WaveComponent> components;
    components.reserve(momenta.size());
    for (const Vec3& p : momenta) {
        components.push_back(WaveComponent{p});
    }
    return Superposition(std::move(components));
}

}  // namespace luminal
