#include "casimir_cli/format.hpp"

#include <array>
#include <charconv>

namespace casimir::cli {

std::string format_number(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace casimir::cli
