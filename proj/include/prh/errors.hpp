#pragma once

#include <stdexcept>
#include <string>

namespace prh {

// Invalid user-facing configuration (bad lattice parameters, kernel
// parameters out of range, hypothesis violations without an override, ...).
// CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Internal contract violations between modules (lattice mismatch, malformed
// spectral data, ...).
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// The starting point of a ground-state search has a degenerate Hartree term
// (D(u) <= 0), so the Nehari projection is undefined.
class DegenerateInit : public std::runtime_error {
public:
    explicit DegenerateInit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prh
