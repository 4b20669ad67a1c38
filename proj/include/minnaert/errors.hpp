#pragma once

#include <stdexcept>
#include <string>

namespace minnaert {

/// Base of every error raised by the toolkit. Carries the name of the module
/// that detected the failure so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Caller supplied a value outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Mesh is open, non-manifold or inconsistently wound.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Two distinct collocation points coincide.
class DegenerateMeshError : public Error {
 public:
  using Error::Error;
};

/// Singular or ill-conditioned solve, non-finite result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Parameter regime that the closed forms do not cover (overdamped
/// oscillator, violated positivity conditions).
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// Quadrature or grid resolution below the supported floor.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Explicit time stepping would be unstable.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Receiver placed on the bubble center.
class SingularReceiverError : public Error {
 public:
  using Error::Error;
};

/// Trace carries no signal above zero.
class NoSignalError : public Error {
 public:
  using Error::Error;
};

/// Not enough zero crossings to measure a period.
class InsufficientRingingError : public Error {
 public:
  using Error::Error;
};

/// Envelope regression impossible or inconsistent with a decaying signal.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Configuration file failed validation. `line` is 1-based, 0 if unknown.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error("cli", what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace minnaert
