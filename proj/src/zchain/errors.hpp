#ifndef ZCHAIN_ERRORS_HPP
#define ZCHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zchain {

// Mixed field specs, bad field parameters, malformed scalars.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition does not hold.  Messages name the violated
// axiom where one applies, e.g. "(B) fails at vertex 1".
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it exceeds the configured size bounds.
struct SizeBoundExceeded : std::runtime_error {
    explicit SizeBoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input (JSON, scalar strings, CLI arguments).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zchain

#endif
