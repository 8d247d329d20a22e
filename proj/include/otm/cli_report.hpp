#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "otm/polynomial.hpp"

namespace otm::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "otm-report/1";
inline constexpr std::string_view kToolName = "otm";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct Tolerances {
  double tau_det = 1e-8;
  double tau_sign = 1e-20;
  double fd_step = 1e-5;
  double fd_relative = 1e-6;
  double residual = 1e-9;
  double log_sum = 1e-12;        // per log-embedding component
  double semipositivity = 1e-12;
  double stokes = 1e-4;
  double stokes_order = 0.25;    // allowed deviation of the observed order from 2
  double curve = 1e-10;
  double curve_constant = 1e-8;
  int stokes_surface_nodes = 512;
  int stokes_boundary_nodes = 512;
  int curve_nodes = 256;
};

struct Config {
  IntCoeffs polynomial;
  unsigned precision_bits = 128;
  int unit_bound = 5;
  std::uint64_t seed = 0;
  int word_length = 3;
  std::map<std::string, int> trials;  // every randomized suite, filled with defaults
  Tolerances tolerances;
  bool assume_irreducible = false;
};

struct SuiteInfo {
  std::string_view module;
  std::string_view name;
  int default_trials;  // 0: the suite runs over a fixed item list
};

/// All verification suites in execution order.
const std::vector<SuiteInfo>& suite_table();

Config default_config();

/// Throws Error(InvalidConfig) on unknown keys, wrong types, trials < 1 or
/// non-positive tolerances. The polynomial may be left for the command line.
Config parse_config(const Json& j);
Config load_config(const std::string& path);
void validate_config(const Config& c);
Json config_to_json(const Config& c);

/// Pretty printer writing every float with 17 significant digits.
std::string write_json(const Json& j);

struct Outcome {
  Json report;
  std::string summary;  // human readable, one item per line
  int exit_code = 0;
};

struct SuiteSelection {
  std::optional<std::string> suite;
  std::optional<int> trial;
};

Outcome cmd_signature(const Config& c);
Outcome cmd_units(const Config& c);
Outcome cmd_admissible(const Config& c);
Outcome cmd_fixed_point(const Config& c, const std::string& word);
Outcome cmd_verify(const Config& c, const SuiteSelection& selection = {});

/// Full command line front end. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace otm::report
