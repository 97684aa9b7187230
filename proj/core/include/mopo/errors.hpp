#pragma once

#include <stdexcept>
#include <string>

namespace mopo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (files, parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Dispersion evaluated outside a Sellmeier validity range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gain at or above the MOPO threshold where the linearized model diverges.
class ThresholdError : public Error {
public:
    using Error::Error;
};

/// Non-finite intermediate values or failed convergence.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Frequency/time grid cannot represent the requested quantity.
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& what, std::size_t suggested_points = 0)
        : Error(what), suggested_points_(suggested_points) {}

    std::size_t suggested_points() const noexcept { return suggested_points_; }

private:
    std::size_t suggested_points_;
};

/// Width or time-constant extraction failed on the supplied data.
class ExtractionError : public Error {
public:
    using Error::Error;
};

/// Shooting found no nontrivial stationary solution in the bracket.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace mopo
