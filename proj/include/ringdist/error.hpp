#pragma once

#include <stdexcept>
#include <string>

namespace ringdist {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid region or parameter set (e.g. r1 >= r2).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Quadrature or root finding failed to converge.
class NumericalError : public Error {
  public:
    NumericalError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    explicit NumericalError(const std::string& what) : NumericalError(what, 0.0, 0.0) {}

    /// Offending segment, when one applies.
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

  private:
    double lo_;
    double hi_;
};

/// Malformed sample data.
class DataError : public Error {
  public:
    using Error::Error;
};

/// Moment matching produced no valid beta distribution.
class FitError : public Error {
  public:
    using Error::Error;
};

/// Approximating density vanishes where the target does not.
class DivergenceError : public Error {
  public:
    using Error::Error;
};

/// Internal invariant broken (e.g. conditional pdf asked for the wrong case).
class InternalError : public Error {
  public:
    using Error::Error;
};

}  // namespace ringdist
