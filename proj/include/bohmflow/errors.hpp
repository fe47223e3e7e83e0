#pragma once

#include <stdexcept>
#include <string>

namespace bohmflow {

/// Invalid input to an operation. `field()` names the offending parameter.
class ValidationError : public std::invalid_argument {
  public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// A numerical procedure failed to reach its target or hit an undefined point.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Evaluation at (or within tolerance of) a node, where phase and velocity are undefined.
class NodeError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Evaluation at the on-axis focal singularity of the Peres field.
class SingularError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Configuration or filesystem problem. `path()` is the offending path or key.
class IoError : public std::runtime_error {
  public:
    IoError(std::string path, const std::string& what)
        : std::runtime_error(what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

} // namespace bohmflow
