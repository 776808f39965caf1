#pragma once

#include <stdexcept>
#include <string>

namespace cyclecount {

// Input document could not be read or parsed.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Input parsed but violates a structural requirement (no Hamiltonian cycle,
// non-positive length, dependent lengths, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource bound was hit (event cap, beta cap, counter overflow).
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cyclecount
