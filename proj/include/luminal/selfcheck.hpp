#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace luminal {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured value vs bound, for the report line
};

/// Runs the built-in invariant checks at desk scale (small component counts,
/// loose-enough sizes to finish in well under a second) and returns one
/// result per check. Deterministic for a given seed.
std::vector<CheckResult> run_selfchecks(std::uint64_t seed);

}  // namespace luminal
