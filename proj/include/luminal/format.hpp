#pragma once

#include <string>
#include <string_view>

namespace luminal {

/// 17-significant-digit decimal form of a double (general format, trailing
/// zeros trimmed), locale independent (std::to_chars). 17 digits round-trip
/// any double exactly, and the fixed rule keeps reruns byte-identical.
std::string format_double(double value);

/// Locale-independent double parse of the whole string (std::from_chars).
/// Throws std::invalid_argument on empty input, trailing junk, or overflow.
double parse_double(std::string_view text);

}  // namespace luminal
