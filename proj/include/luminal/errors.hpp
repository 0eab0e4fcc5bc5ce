#pragma once

#include <stdexcept>
#include <string>

namespace luminal {

/// An iterative routine exhausted its step or iteration budget without
/// reaching the requested tolerance. The message carries diagnostics.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A text input (superposition file, config) could not be parsed.
/// `line` is 1-based; 0 means the error is not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line_number)
        : std::runtime_error(what), line(line_number) {}

    std::size_t line;
};

}  // namespace luminal
