#ifndef HMCF_ERRORS_HPP
#define HMCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmcf {

// Bad user input: invalid grid sizes, malformed configs, unknown keys.
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The discrete immersion condition failed (|dF/dtheta| below threshold) or
// a frame became unusable. Maps to exit code 2.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values, failed quadrature, non-positive volume. Exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hmcf

#endif
