#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uscpol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Input outside the domain of a physical formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class GapError : public DomainError {
 public:
  GapError(double lower_edge, double upper_edge, const std::string& what);
  double lower_edge() const noexcept { return lower_; }
  double upper_edge() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class StrongCouplingError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Failure of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A spectral feature cannot be resolved from the data.
class ResolvabilityError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public ResolvabilityError {
 public:
  using ResolvabilityError::ResolvabilityError;
};

}  // namespace uscpol
