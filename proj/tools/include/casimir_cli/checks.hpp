#pragma once

// Built-in self-checks run by `casimir check <suite>`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/medium.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::cli {

struct CheckOutcome {
  std::string suite;
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckOptions {
  QuadratureSpec spec;
  /// Extra medium to include where a suite can use one (kk, dyson).
  std::optional<Medium> medium;
};

inline constexpr std::string_view kCheckSuites[] = {"limits", "kk", "dyson", "action"};

/// Runs one suite; an unknown name throws std::invalid_argument. Library
/// errors raised inside a check are reported as a failed outcome.
std::vector<CheckOutcome> run_check_suite(std::string_view suite, const CheckOptions& options);

}  // namespace casimir::cli
