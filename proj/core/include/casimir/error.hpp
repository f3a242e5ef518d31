#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace casimir {

enum class ErrorKind {
  Domain,
  IntegrationFailure,
  UnsupportedDistribution,
  Pole,
  MediumInstability,
  DegenerateMode,
  InvalidRegime,
  Divergence,
  InvalidModel,
};

std::string_view to_string(ErrorKind kind);

/// Base error for every failure raised by the library. The kind tag lets
/// front ends map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Quadrature that did not reach its tolerance where a converged value was
/// mandatory. Carries the best tolerance actually achieved.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double achieved_error)
      : Error(ErrorKind::IntegrationFailure, what),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace casimir
