#ifndef EVMIRROR_ERRORS_HPP
#define EVMIRROR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evmirror {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A numerical routine could not reach its accuracy target.
class AccuracyError : public Error {
  public:
    using Error::Error;
};

/// An asymptotic or small-parameter formula was requested outside its
/// stated range of applicability.
class ApplicabilityError : public Error {
  public:
    using Error::Error;
};

/// A least-squares fit left a residual above the requested tolerance.
class FitError : public Error {
  public:
    using Error::Error;
};

/// A sampled quantity is not fully contained by the grid it was asked
/// to live on.
class CoverageError : public Error {
  public:
    using Error::Error;
};

/// Data fed to an estimator does not behave as the estimator assumes
/// (for example, a centroid track that is not a straight line).
class RegimeError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Invalid run configuration (bad flag combination, empty selection, ...).
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace evmirror

#endif
