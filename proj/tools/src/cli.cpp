#include "casimir_cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "casimir/error.hpp"
#include "casimir/forces.hpp"
#include "casimir/propagators.hpp"
#include "casimir_cli/checks.hpp"
#include "casimir_cli/format.hpp"
#include "casimir_cli/medium_io.hpp"

namespace casimir::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Settings {
  std::string medium_path;
  std::optional<json> inline_medium;  // from a config file
  fs::path config_dir;
  std::string field = "scalar";
  std::string bc = "field";
  double hmin = 1.0;
  std::optional<double> hmax;
  int points = 1;
  bool log_spacing = false;
  QuadratureSpec spec;
  bool rel_tol_from_config = false;
  std::string format = "csv";
  std::string out;
  double eta = kDefaultEta;
  double force_scale = 1.0;

  std::string suite;

  std::string axis = "euclidean";
  std::vector<std::string> kinds;
  std::vector<double> ks{1.0};
  std::vector<double> freqs{1.0};
  double omega_res = 1.0;
};

// Thrown for conditions that map to a specific exit code.
struct Exit {
  int code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& message) { throw Exit{kExitInput, message}; }

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// --- configuration file ------------------------------------------------------

double config_number(const json& v, const std::string& key) {
  if (!v.is_number()) input_error("config." + key + ": expected a number");
  return v.get<double>();
}

std::string config_string(const json& v, const std::string& key) {
  if (!v.is_string()) input_error("config." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> config_numbers(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) input_error("config." + key + ": expected a number or array of numbers");
  std::vector<double> out;
  for (const auto& item : v) out.push_back(config_number(item, key));
  return out;
}

// Applies every key of the config file whose flag was not given.
void apply_config(const fs::path& path, const CLI::App& cmd, Settings& s) {
  json doc;
  try {
    doc = parse_json(read_text_file(path), path.string());
  } catch (const InputError& e) {
    input_error(e.what());
  }
  if (!doc.is_object()) input_error(path.string() + ": expected a JSON object");
  s.config_dir = path.parent_path();

  auto flag_given = [&cmd](const char* flag) {
    try {
      return cmd.count(flag) > 0;
    } catch (const CLI::OptionNotFound&) {
      return true;  // not an option of this command; ignore the key
    }
  };

  for (const auto& [key, v] : doc.items()) {
    if (key == "medium") {
      if (flag_given("--medium")) continue;
      if (v.is_string()) {
        s.medium_path = (s.config_dir / v.get<std::string>()).string();
      } else if (v.is_object()) {
        s.inline_medium = v;
      } else {
        input_error("config.medium: expected a file path or a medium object");
      }
    } else if (key == "field") {
      if (!flag_given("--field")) s.field = config_string(v, key);
    } else if (key == "bc") {
      if (!flag_given("--bc")) s.bc = config_string(v, key);
    } else if (key == "hmin") {
      if (!flag_given("--hmin")) s.hmin = config_number(v, key);
    } else if (key == "hmax") {
      if (!flag_given("--hmax")) s.hmax = config_number(v, key);
    } else if (key == "points") {
      if (!v.is_number_integer()) input_error("config.points: expected an integer");
      if (!flag_given("--points")) s.points = v.get<int>();
    } else if (key == "log") {
      if (!v.is_boolean()) input_error("config.log: expected true or false");
      if (!flag_given("--log")) s.log_spacing = v.get<bool>();
    } else if (key == "rel_tol") {
      if (!flag_given("--rel-tol")) {
        s.spec.rel_tol = config_number(v, key);
        s.rel_tol_from_config = true;
      }
    } else if (key == "abs_tol") {
      if (!flag_given("--abs-tol")) s.spec.abs_tol = config_number(v, key);
    } else if (key == "format") {
      if (!flag_given("--format")) s.format = config_string(v, key);
    } else if (key == "out") {
      if (!flag_given("--out")) s.out = config_string(v, key);
    } else if (key == "eta") {
      if (!flag_given("--eta")) s.eta = config_number(v, key);
    } else if (key == "force_scale") {
      if (!flag_given("--force-scale")) s.force_scale = config_number(v, key);
    } else if (key == "axis") {
      if (!flag_given("--axis")) s.axis = config_string(v, key);
    } else if (key == "kinds") {
      if (flag_given("--kind")) continue;
      if (!v.is_array()) input_error("config.kinds: expected an array of strings");
      s.kinds.clear();
      for (const auto& item : v) s.kinds.push_back(config_string(item, key));
    } else if (key == "k") {
      if (!flag_given("--k")) s.ks = config_numbers(v, key);
    } else if (key == "freq") {
      if (!flag_given("--freq")) s.freqs = config_numbers(v, key);
    } else if (key == "omega_res") {
      if (!flag_given("--omega-res")) s.omega_res = config_number(v, key);
    } else {
      input_error("config." + key + ": unknown key");
    }
  }
}

void validate_common(const Settings& s) {
  if (s.field != "scalar" && s.field != "em") input_error("field: expected scalar or em");
  if (s.format != "csv" && s.format != "json") input_error("format: expected csv or json");
  if (!(s.spec.rel_tol > 0.0) || !std::isfinite(s.spec.rel_tol)) {
    input_error("rel-tol: must be a positive number");
  }
  if (!(s.spec.abs_tol > 0.0) || !std::isfinite(s.spec.abs_tol)) {
    input_error("abs-tol: must be a positive number");
  }
  if (!(s.eta >= 0.0) || !std::isfinite(s.eta)) input_error("eta: must be >= 0");
}

FieldKind field_kind(const Settings& s) {
  return s.field == "em" ? FieldKind::EM : FieldKind::Scalar;
}

std::optional<Medium> load_medium(const Settings& s) {
  try {
    if (!s.medium_path.empty()) return load_medium_file(s.medium_path);
    if (s.inline_medium) return medium_from_json(*s.inline_medium, "config.medium");
  } catch (const InputError& e) {
    input_error(e.what());
  }
  return std::nullopt;
}

[[noreturn]] void rethrow_library_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::MediumInstability:
    case ErrorKind::InvalidRegime:
      throw Exit{kExitInstability, e.what()};
    case ErrorKind::IntegrationFailure:
      throw Exit{kExitUnconverged, e.what()};
    default:
      throw Exit{kExitInput, e.what()};
  }
}

// --- force ---------------------------------------------------------------------

std::vector<double> separation_grid(const Settings& s) {
  const double hmax = s.hmax.value_or(s.hmin);
  if (!(s.hmin > 0.0) || !std::isfinite(s.hmin)) input_error("hmin: must be > 0");
  if (!(hmax >= s.hmin) || !std::isfinite(hmax)) input_error("hmax: must be >= hmin");
  if (s.points < 1) input_error("points: must be >= 1");
  if (s.points == 1) return {s.hmin};
  std::vector<double> grid;
  for (int i = 0; i < s.points; ++i) {
    const double t = static_cast<double>(i) / (s.points - 1);
    grid.push_back(s.log_spacing ? s.hmin * std::pow(hmax / s.hmin, t)
                                 : s.hmin + t * (hmax - s.hmin));
  }
  grid.back() = hmax;
  return grid;
}

int cmd_force(const Settings& s, std::string& output) {
  validate_common(s);
  if (s.bc != "field" && s.bc != "polarization") input_error("bc: expected field or polarization");
  if (s.bc == "polarization" && s.field != "scalar") {
    input_error("bc: polarization boundary conditions need --field scalar");
  }
  if (!(s.force_scale > 0.0) || !std::isfinite(s.force_scale)) {
    input_error("force-scale: must be a positive number");
  }
  const std::vector<double> grid = separation_grid(s);
  const Medium medium = load_medium(s).value_or(Medium::vacuum());

  std::vector<ForceResult> rows;
  for (double h : grid) {
    ForceQuery q;
    q.medium = medium;
    q.kind = field_kind(s);
    q.bc = s.bc == "polarization" ? BoundaryCondition::Polarization : BoundaryCondition::Field;
    q.separation = h;
    q.spec = s.spec;
    try {
      ForceResult r = compute_force(q);
      r.force_per_area *= s.force_scale;
      r.error_estimate *= s.force_scale;
      rows.push_back(r);
    } catch (const Error& e) {
      rethrow_library_error(e);
    }
  }

  bool all_converged = true;
  std::ostringstream os;
  if (s.format == "csv") {
    os << "H,force_per_area,error_estimate,vacuum_ratio,evaluations,converged\n";
    for (const auto& r : rows) {
      os << format_number(r.separation) << ',' << format_number(r.force_per_area) << ','
         << format_number(r.error_estimate) << ',' << format_number(r.vacuum_ratio) << ','
         << r.evaluations << ',' << (r.converged ? "true" : "false") << '\n';
      all_converged = all_converged && r.converged;
    }
  } else {
    json doc = {{"field", s.field}, {"bc", s.bc}, {"force_scale", s.force_scale},
                {"rows", json::array()}};
    for (const auto& r : rows) {
      doc["rows"].push_back({{"H", r.separation},
                             {"force_per_area", r.force_per_area},
                             {"error_estimate", r.error_estimate},
                             {"vacuum_ratio", r.vacuum_ratio},
                             {"evaluations", r.evaluations},
                             {"converged", r.converged}});
      all_converged = all_converged && r.converged;
    }
    os << doc.dump(2) << '\n';
  }
  output = os.str();
  return all_converged ? kExitOk : kExitUnconverged;
}

// --- check ---------------------------------------------------------------------

int cmd_check(const Settings& s, std::string& output) {
  validate_common(s);
  CheckOptions options;
  options.spec = s.spec;
  options.medium = load_medium(s);
  const std::vector<CheckOutcome> outcomes = run_check_suite(s.suite, options);

  bool all_pass = true;
  std::ostringstream os;
  if (s.format == "json") {
    json doc = json::array();
    for (const auto& o : outcomes) {
      doc.push_back({{"suite", o.suite},
                     {"name", o.name},
                     {"deviation", std::isfinite(o.deviation) ? json(o.deviation) : json()},
                     {"tolerance", o.tolerance},
                     {"pass", o.pass}});
    }
    os << doc.dump(2) << '\n';
  } else {
    for (const auto& o : outcomes) {
      os << (o.pass ? "PASS" : "FAIL") << "  " << o.suite << "  " << o.name << "  deviation="
         << (std::isfinite(o.deviation) ? format_number(o.deviation) : std::string("error"))
         << "  tolerance=" << format_number(o.tolerance) << '\n';
    }
  }
  for (const auto& o : outcomes) all_pass = all_pass && o.pass;
  output = os.str();
  return all_pass ? kExitOk : kExitCheckFailed;
}

// --- propagator ----------------------------------------------------------------

PropagatorKind parse_kind(const std::string& name) {
  for (PropagatorKind k : {PropagatorKind::G0, PropagatorKind::Gomega, PropagatorKind::Gphiphi,
                           PropagatorKind::GphiP, PropagatorKind::GphiM, PropagatorKind::GPP,
                           PropagatorKind::GMM}) {
    if (to_string(k) == name) return k;
  }
  input_error("kind: unknown propagator '" + name +
              "' (expected G0, Gomega, Gphiphi, GphiP, GphiM, GPP or GMM)");
}

bool euclidean_kind(PropagatorKind k) {
  return k == PropagatorKind::G0 || k == PropagatorKind::Gomega ||
         k == PropagatorKind::Gphiphi;
}

std::complex<double> evaluate(PropagatorKind kind, const Medium& medium, FieldKind field,
                              const MomentumFrequencyPoint& p, const Settings& s) {
  const bool euclid = p.axis == Axis::Euclidean;
  switch (kind) {
    case PropagatorKind::G0:
      if (euclid) return g_phiphi(Medium::vacuum(), FieldKind::Scalar, p).value;
      return g0(p.k, p.freq, s.eta);
    case PropagatorKind::Gomega:
      if (euclid) return 1.0 / (s.omega_res * s.omega_res + p.freq * p.freq);
      return g_omega(s.omega_res, p.freq, s.eta);
    case PropagatorKind::Gphiphi:
      return g_phiphi(medium, field, p, s.eta).value;
    case PropagatorKind::GphiP:
      return cross_correlators(medium, p, s.eta).phi_p;
    case PropagatorKind::GphiM:
      return cross_correlators(medium, p, s.eta).phi_m;
    case PropagatorKind::GPP:
      return cross_correlators(medium, p, s.eta).pp;
    case PropagatorKind::GMM:
      return cross_correlators(medium, p, s.eta).mm;
  }
  return {};
}

int cmd_propagator(const Settings& s, std::string& output) {
  validate_common(s);
  if (s.axis != "real" && s.axis != "euclidean") input_error("axis: expected real or euclidean");
  const Axis axis = s.axis == "real" ? Axis::Real : Axis::Euclidean;
  if (!(s.omega_res > 0.0) || !std::isfinite(s.omega_res)) input_error("omega-res: must be > 0");

  std::vector<PropagatorKind> kinds;
  for (const auto& name : s.kinds) kinds.push_back(parse_kind(name));
  if (kinds.empty()) {
    kinds = {PropagatorKind::G0, PropagatorKind::Gomega, PropagatorKind::Gphiphi};
    if (axis == Axis::Real) {
      kinds.insert(kinds.end(), {PropagatorKind::GphiP, PropagatorKind::GphiM,
                                 PropagatorKind::GPP, PropagatorKind::GMM});
    }
  }
  for (PropagatorKind k : kinds) {
    if (axis == Axis::Euclidean && !euclidean_kind(k)) {
      input_error("kind: " + std::string(to_string(k)) + " is only defined on the real axis");
    }
  }
  for (double k : s.ks) {
    if (!(k >= 0.0) || !std::isfinite(k)) input_error("k: momenta must be finite and >= 0");
  }
  for (double w : s.freqs) {
    if (!std::isfinite(w)) input_error("freq: frequencies must be finite");
    if (axis == Axis::Euclidean && w < 0.0) input_error("freq: euclidean frequencies must be >= 0");
  }
  const Medium medium = load_medium(s).value_or(Medium::vacuum());
  const FieldKind field = field_kind(s);

  struct Row {
    PropagatorKind kind;
    double k;
    double freq;
    std::optional<std::complex<double>> value;  // empty on a pole
  };
  std::vector<Row> rows;
  bool any_pole = false;
  for (double k : s.ks) {
    for (double w : s.freqs) {
      const MomentumFrequencyPoint p{k, w, axis};
      for (PropagatorKind kind : kinds) {
        try {
          rows.push_back({kind, k, w, evaluate(kind, medium, field, p, s)});
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Pole && e.kind() != ErrorKind::UnsupportedDistribution) {
            rethrow_library_error(e);
          }
          rows.push_back({kind, k, w, std::nullopt});
          any_pole = true;
        }
      }
    }
  }

  std::ostringstream os;
  if (s.format == "csv") {
    os << "axis,kind,k,freq,re,im\n";
    for (const auto& r : rows) {
      os << to_string(axis) << ',' << to_string(r.kind) << ',' << format_number(r.k) << ','
         << format_number(r.freq) << ',';
      if (r.value) {
        os << format_number(r.value->real()) << ',' << format_number(r.value->imag()) << '\n';
      } else {
        os << "pole,pole\n";
      }
    }
  } else {
    json doc = json::array();
    for (const auto& r : rows) {
      json row = {{"axis", to_string(axis)}, {"kind", to_string(r.kind)}, {"k", r.k},
                  {"freq", r.freq}};
      if (r.value) {
        row["re"] = r.value->real();
        row["im"] = r.value->imag();
        row["pole"] = false;
      } else {
        row["re"] = nullptr;
        row["im"] = nullptr;
        row["pole"] = true;
      }
      doc.push_back(row);
    }
    os << doc.dump(2) << '\n';
  }
  output = os.str();
  return any_pole ? kExitUnconverged : kExitOk;
}

// --- wiring --------------------------------------------------------------------

void add_common_options(CLI::App& cmd, Settings& s, std::string& config_path) {
  cmd.add_option("--medium", s.medium_path, "Medium definition file (JSON)");
  cmd.add_option("--field", s.field, "Field kind: scalar or em")->capture_default_str();
  cmd.add_option("--rel-tol", s.spec.rel_tol, "Relative quadrature tolerance");
  cmd.add_option("--abs-tol", s.spec.abs_tol, "Absolute quadrature tolerance");
  cmd.add_option("--format", s.format, "Output format: csv or json")->capture_default_str();
  cmd.add_option("--out", s.out, "Write results to this file instead of stdout");
  cmd.add_option("--eta", s.eta, "Real-axis pole shift")->capture_default_str();
  cmd.add_option("--config", config_path, "JSON file with defaults; flags take precedence");
}

// Precedence: flag, then config file, then environment, then built-in.
void apply_environment(const Environment& env, const CLI::App& cmd, Settings& s) {
  if (!env.medium_reltol || cmd.count("--rel-tol") > 0 || s.rel_tol_from_config) return;
  const auto value = parse_double(*env.medium_reltol);
  if (!value || !(*value > 0.0) || !std::isfinite(*value)) {
    input_error("CASIMIR_MEDIUM_RELTOL: expected a positive number, got '" +
                *env.medium_reltol + "'");
  }
  s.spec.rel_tol = *value;
}

void write_output(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) input_error("out: cannot open '" + s.out + "' for writing");
  file << text;
  if (!file) input_error("out: failed writing '" + s.out + "'");
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* v = std::getenv("CASIMIR_MEDIUM_RELTOL")) env.medium_reltol = v;
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  Settings s;
  std::string config_path;

  CLI::App app{"Casimir force between ideal conductors enclosing a dispersive medium.\n"
               "Natural units: hbar = c = 1; forces are per unit plate area, negative when "
               "attractive."};
  app.name("casimir");
  app.require_subcommand(1);

  CLI::App* force = app.add_subcommand("force", "Force per unit area over a separation grid");
  add_common_options(*force, s, config_path);
  force->add_option("--bc", s.bc, "Boundary condition: field or polarization")
      ->capture_default_str();
  force->add_option("--hmin", s.hmin, "Smallest separation")->capture_default_str();
  force->add_option("--hmax", s.hmax, "Largest separation (defaults to hmin)");
  force->add_option("--points", s.points, "Number of separations")->capture_default_str();
  force->add_flag("--log", s.log_spacing, "Logarithmic grid spacing");
  force->add_option("--force-scale", s.force_scale,
                    "Multiply forces by this factor, e.g. hbar*c in the caller's units")
      ->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "Run a self-check suite");
  add_common_options(*check, s, config_path);
  check->add_option("suite", s.suite, "limits, kk, dyson or action")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCheckSuites),
                                                     std::end(kCheckSuites))));

  CLI::App* propagator = app.add_subcommand("propagator", "Dump two-point functions as CSV");
  add_common_options(*propagator, s, config_path);
  propagator->add_option("--axis", s.axis, "real or euclidean")->capture_default_str();
  propagator->add_option("--kind", s.kinds, "Propagators to dump (repeatable)")
      ->delimiter(',');
  propagator->add_option("--k", s.ks, "Momenta (comma separated)")->delimiter(',');
  propagator->add_option("--freq", s.freqs, "Frequencies (comma separated)")->delimiter(',');
  propagator->add_option("--omega-res", s.omega_res, "Reservoir frequency for Gomega")
      ->capture_default_str();

  std::vector<const char*> argv{"casimir"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (!config_path.empty()) apply_config(config_path, *cmd, s);
    apply_environment(env, *cmd, s);

    std::string output;
    int code = kExitOk;
    if (cmd == force) {
      code = cmd_force(s, output);
    } else if (cmd == check) {
      code = cmd_check(s, output);
    } else {
      code = cmd_propagator(s, output);
    }
    write_output(s, output, out);
    if (code == kExitUnconverged) {
      err << (cmd == propagator ? "warning: some rows hit a pole\n"
                                : "warning: some integrals did not converge\n");
    } else if (code == kExitCheckFailed) {
      err << "error: some checks failed\n";
    }
    return code;
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace casimir::cli
