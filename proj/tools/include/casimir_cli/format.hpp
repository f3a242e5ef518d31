#pragma once

#include <string>

namespace casimir::cli {

/// Shortest decimal form that reads back to the same double; locale-free.
std::string format_number(double value);

}  // namespace casimir::cli
