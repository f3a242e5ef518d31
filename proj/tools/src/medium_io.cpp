#include "casimir_cli/medium_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <vector>

#include "casimir/error.hpp"

namespace casimir::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError(field + ": " + what);
}

std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where + "." + key, "unknown key");
    }
  }
}

double number(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  if (!it->is_number()) fail(where + "." + key, "expected a number");
  return it->get<double>();
}

std::vector<double> numbers(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  if (!it->is_array()) fail(where + "." + key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& v = (*it)[i];
    if (!v.is_number()) {
      fail(where + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

SusceptibilityModel model_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto type_it = obj.find("type");
  if (type_it == obj.end()) fail(where + ".type", "missing");
  if (!type_it->is_string()) fail(where + ".type", "expected a string");
  const std::string type = type_it->get<std::string>();

  SusceptibilityModel model;
  if (type == "constant") {
    reject_unknown_keys(obj, where, {"type", "chi0"});
    model = Constant{number(obj, where, "chi0")};
  } else if (type == "lorentz") {
    reject_unknown_keys(obj, where, {"type", "omega_p", "omega_0", "gamma"});
    model = Lorentz{number(obj, where, "omega_p"), number(obj, where, "omega_0"),
                    number(obj, where, "gamma")};
  } else if (type == "drude") {
    reject_unknown_keys(obj, where, {"type", "omega_p", "gamma"});
    model = Drude{number(obj, where, "omega_p"), number(obj, where, "gamma")};
  } else if (type == "sharp_resonance") {
    reject_unknown_keys(obj, where, {"type", "omega_p", "omega_0"});
    model = SharpResonance{number(obj, where, "omega_p"), number(obj, where, "omega_0")};
  } else if (type == "tabulated") {
    reject_unknown_keys(obj, where, {"type", "frequencies", "coupling"});
    try {
      model = TabulatedCoupling(numbers(obj, where, "frequencies"),
                                numbers(obj, where, "coupling"));
    } catch (const Error& e) {
      fail(where, e.what());
    }
  } else {
    fail(where + ".type",
         "unknown model '" + type +
             "' (expected constant, lorentz, drude, sharp_resonance or tabulated)");
  }

  try {
    validate(model);
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return model;
}

}  // namespace

nlohmann::json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the character that broke the parse.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::string_view prefix = text.substr(0, end);
    const std::size_t line = 1 + std::count(prefix.begin(), prefix.end(), '\n');
    const std::size_t last_newline = prefix.rfind('\n');
    const std::size_t column =
        last_newline == std::string_view::npos ? end + 1 : end - last_newline;
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": invalid JSON";
    const std::string detail = e.what();
    if (const auto pos = detail.find("- "); pos != std::string::npos) {
      msg << " (" << detail.substr(pos + 2) << ")";
    }
    throw InputError(msg.str());
  }
}

Medium medium_from_json(const nlohmann::json& doc, const std::string& where) {
  if (!doc.is_object()) {
    fail(where.empty() ? "medium" : where, "expected an object with 'electric' and/or 'magnetic'");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "electric" && key != "magnetic") fail(join(where, key), "unknown key");
  }
  Medium medium;
  if (const auto it = doc.find("electric"); it != doc.end()) {
    medium.electric = model_from_json(*it, join(where, "electric"));
  }
  if (const auto it = doc.find("magnetic"); it != doc.end()) {
    medium.magnetic = model_from_json(*it, join(where, "magnetic"));
  }
  return medium;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Medium load_medium_file(const std::filesystem::path& path) {
  const std::string source = path.string();
  const nlohmann::json doc = parse_json(read_text_file(path), source);
  try {
    return medium_from_json(doc, "");
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

}  // namespace casimir::cli
