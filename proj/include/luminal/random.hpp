#pragma once

#include <cstdint>
#include <random>

#include "luminal/vec3.hpp"

namespace luminal {

/// Deterministic random source. All distribution transforms are implemented
/// here (not via std::*_distribution) so that streams are bit-identical
/// across standard libraries and platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1): top 53 bits of the engine output.
    double uniform();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller (both values used, cached).
    double normal();

    /// Isotropic unit vector: three normals, normalised. Degenerate draws
    /// (norm too small to normalise safely) are rejected and redrawn.
    Vec3 unit_vector();

    /// Stable derivation of an independent substream seed from (seed, index).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace luminal
