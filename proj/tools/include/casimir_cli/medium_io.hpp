#pragma once

// Medium definition files.
//
//   {
//     "electric": {"type": "lorentz", "omega_p": 1, "omega_0": 1, "gamma": 0.1},
//     "magnetic": {"type": "constant", "chi0": 0.2}
//   }
//
// Types and their keys:
//   constant         chi0
//   lorentz          omega_p, omega_0, gamma
//   drude            omega_p, gamma
//   sharp_resonance  omega_p, omega_0
//   tabulated        frequencies, coupling   (equal-length arrays)
//
// Either side may be omitted and defaults to zero response. Unknown keys are
// rejected so that typos cannot silently fall back to defaults.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "casimir/medium.hpp"

namespace casimir::cli {

/// Malformed user input. The message names the file, line or field at fault.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors report `source:line:column`.
nlohmann::json parse_json(std::string_view text, const std::string& source);

/// Builds a medium from an already parsed document. `where` prefixes field
/// names in error messages and may be empty.
Medium medium_from_json(const nlohmann::json& doc, const std::string& where);

Medium load_medium_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace casimir::cli
