#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weakmeas {

/// Base class for all library errors. `code()` is a stable, machine-parsable
/// class tag used by the CLI for exit status and error reporting.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* code() const noexcept { return "error"; }
};

/// Violated precondition or malformed input (non-hermitian generator,
/// unnormalized state, inconsistent parameters, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "validation"; }
};

/// Requested Hilbert-space dimension exceeds the configured cap.
class CapacityError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "capacity"; }
};

/// Fock-ladder truncation would corrupt the result (population at the cutoff).
class TruncationError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "truncation"; }
};

/// Post-selection onto an (almost) orthogonal state, or a pointer component
/// with zero amplitude: the conditional quantity is undefined.
class PostSelectionError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "post_selection"; }
};

/// The requested estimate carries no signal (zero sensitivity).
class EstimationError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "estimation"; }
};

/// Config parsing/validation failure. Carries every issue found, not just the
/// first one.
class ConfigError : public Error {
  public:
    ConfigError(const std::string& msg, std::vector<std::string> issues)
        : Error(msg), issues_(std::move(issues)) {}
    const char* code() const noexcept override { return "config"; }
    const std::vector<std::string>& issues() const noexcept { return issues_; }

  private:
    std::vector<std::string> issues_;
};

/// Filesystem failure while reading or writing results.
class IoError : public Error {
  public:
    using Error::Error;
    const char* code() const noexcept override { return "io"; }
};

} // namespace weakmeas
