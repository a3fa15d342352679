#pragma once

#include <stdexcept>
#include <string>

namespace phev {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructor or operation was given parameters outside its domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A special function argument exceeded its overflow guard.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Moment matching found no parameterization for the requested moments.
class NoSolution : public Error {
public:
    NoSolution(const std::string& what, double bound)
        : Error(what), bound_(bound) {}

    /// The feasibility bound that was violated (family specific).
    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class WindowTooSmall : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class UnknownOutlet : public Error {
public:
    using Error::Error;
};

class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

/// Scenario configuration failed to parse or validate. The message names
/// the offending field.
class ConfigInvalid : public Error {
public:
    ConfigInvalid(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace phev
