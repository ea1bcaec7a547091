#pragma once

#include <stdexcept>
#include <string>

namespace jumpcode {

// Exit-code contract for the CLI: config/usage -> 2, feasibility/capacity -> 3,
// oracle assertion -> 4. Everything else is a plain runtime_error (exit 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct DomainError : ConfigError {
    explicit DomainError(const std::string& m) : ConfigError(m) {}
};

struct FeasibilityError : std::runtime_error {
    explicit FeasibilityError(const std::string& m) : std::runtime_error(m) {}
};

struct CapacityError : FeasibilityError {
    explicit CapacityError(const std::string& m) : FeasibilityError(m) {}
};

struct DecodeError : ConfigError {
    explicit DecodeError(const std::string& m) : ConfigError(m) {}
};

struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace jumpcode
