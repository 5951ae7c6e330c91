#pragma once

#include <stdexcept>
#include <string>

namespace homsim {

// Bad or inconsistent run configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Query outside a tabulated grid, or a grid that does not meet a caller's
// shape requirement (e.g. symmetrization needs a square domain).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Integrand produced a non-finite value; the message carries the node location.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computed quantity violates a structural guarantee by more than numerical
// slack (e.g. a coincidence rate more negative than the clamp threshold).
struct NumericalConsistencyError : std::runtime_error {
    explicit NumericalConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidBeamSplitterError : std::invalid_argument {
    explicit InvalidBeamSplitterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Requested an amplitude decomposition outside its domain of validity.
struct UnsupportedDecompositionError : std::logic_error {
    explicit UnsupportedDecompositionError(const std::string& msg) : std::logic_error(msg) {}
};

// An operation's precondition on its inputs does not hold.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace homsim
