#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liouville {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
public:
  UnknownIdentifier(std::size_t offset, std::string name)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        offset_(offset), name_(std::move(name)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

private:
  std::size_t offset_;
  std::string name_;
};

/// Evaluation outside the domain of a subexpression (ln of a non-positive value, ...).
class DomainError : public Error {
public:
  DomainError(const std::string& what, std::string subexpr = {})
      : Error(subexpr.empty() ? what : what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}

  const std::string& subexpression() const noexcept { return subexpr_; }

private:
  std::string subexpr_;
};

#define LIOUVILLE_SIMPLE_ERROR(Name)                                                               \
  class Name : public Error {                                                                      \
  public:                                                                                          \
    explicit Name(const std::string& what) : Error(what) {}                                        \
  }

LIOUVILLE_SIMPLE_ERROR(InvalidInterval);
LIOUVILLE_SIMPLE_ERROR(Inconclusive);
LIOUVILLE_SIMPLE_ERROR(QuadratureFailure);
LIOUVILLE_SIMPLE_ERROR(FluxMismatch);
LIOUVILLE_SIMPLE_ERROR(NonMonotone);
LIOUVILLE_SIMPLE_ERROR(InvalidProblem);
LIOUVILLE_SIMPLE_ERROR(GridTooCoarse);
LIOUVILLE_SIMPLE_ERROR(GridMismatch);
LIOUVILLE_SIMPLE_ERROR(DimensionMismatch);
LIOUVILLE_SIMPLE_ERROR(NonpositiveScale);
LIOUVILLE_SIMPLE_ERROR(OriginSingularity);
LIOUVILLE_SIMPLE_ERROR(AxisDegeneracy);
LIOUVILLE_SIMPLE_ERROR(StencilFailure);
LIOUVILLE_SIMPLE_ERROR(ConfigError);

#undef LIOUVILLE_SIMPLE_ERROR

/// A sampled hypothesis failed; carries the offending abscissa when there is one.
class HypothesisViolation : public Error {
public:
  HypothesisViolation(const std::string& what, double witness)
      : Error(what + " (witness t = " + std::to_string(witness) + ")"), witness_(witness) {}

  double witness() const noexcept { return witness_; }

private:
  double witness_;
};

} // namespace liouville
