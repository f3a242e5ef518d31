#include "casimir/error.hpp"

namespace casimir {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::UnsupportedDistribution: return "unsupported-distribution";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::MediumInstability: return "medium-instability";
    case ErrorKind::DegenerateMode: return "degenerate-mode";
    case ErrorKind::InvalidRegime: return "invalid-regime";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::InvalidModel: return "invalid-model";
  }
  return "unknown";
}

}  // namespace casimir
