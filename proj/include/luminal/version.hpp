#pragma once

namespace luminal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace luminal
