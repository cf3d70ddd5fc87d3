#pragma once

#include <stdexcept>
#include <string>

namespace sonoqed {

// Bad user input. Message names the offending field.
class ValidationError : public std::invalid_argument {
  public:
    ValidationError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Quadrature failed to converge, matching degenerated, and similar.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Unreadable config, unwritable output.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace sonoqed
