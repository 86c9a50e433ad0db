#pragma once

#include <stdexcept>
#include <string>

namespace wavend {

/// Configuration / precondition failures. The CLI maps these to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateGrid : ConfigError {
    using ConfigError::ConfigError;
};

struct NonPositiveSpeed : ConfigError {
    using ConfigError::ConfigError;
};

struct ShapeMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct EmptyMatrix : ConfigError {
    using ConfigError::ConfigError;
};

struct MissingSeed : ConfigError {
    using ConfigError::ConfigError;
};

struct ZeroTruth : ConfigError {
    using ConfigError::ConfigError;
};

struct NoWork : ConfigError {
    using ConfigError::ConfigError;
};

/// Control horizon shorter than the wave travel time across the domain.
struct HorizonTooShort : ConfigError {
    using ConfigError::ConfigError;
};

/// Numerical failures. The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : NumericalError {
    using NumericalError::NumericalError;
};

struct NearSingularSystem : NumericalError {
    using NumericalError::NumericalError;
};

struct CFLViolation : NumericalError {
    using NumericalError::NumericalError;
};

/// File-system failures. The CLI maps these to exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wavend
