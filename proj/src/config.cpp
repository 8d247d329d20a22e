#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "otm/cli_report.hpp"
#include "otm/error.hpp"

namespace otm::report {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

BigInt parse_coefficient(const Json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      config_error("polynomial coefficient \"" + s + "\" is not an integer");
    }
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  config_error("polynomial coefficients must be integers");
}

template <class T>
T get_integer(const Json& v, const std::string& key, long long lo, long long hi) {
  if (!v.is_number_integer()) config_error(key + " must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
    config_error(key + " out of range");
  }
  const long long x = v.is_number_unsigned() ? static_cast<long long>(v.get<std::uint64_t>())
                                             : v.get<long long>();
  if (x < lo || x > hi) config_error(key + " out of range");
  return static_cast<T>(x);
}

double get_double(const Json& v, const std::string& key) {
  if (!v.is_number()) config_error(key + " must be a number");
  return v.get<double>();
}

void format_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
  if (std::string_view(buf).find_first_of(".eE") == std::string_view::npos) out += ".0";
}

bool is_scalar_array(const Json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void write_value(std::string& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  " + Json(k).dump() + ": ";
        write_value(out, v, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_value(out, j[i], indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad + "  ";
        write_value(out, j[i], indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      format_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

const std::vector<SuiteInfo>& suite_table() {
  static const std::vector<SuiteInfo> table{
      {"field_core", "root_reconstruction", 0},
      {"field_core", "conjugate_pairing", 0},
      {"field_core", "embedding_homomorphism", 200},
      {"field_core", "norm_consistency", 200},
      {"unit_lattice", "log_sum_zero", 0},
      {"unit_lattice", "log_additivity", 200},
      {"unit_lattice", "square_positivity", 0},
      {"unit_lattice", "admissible_permutation", 0},
      {"ot_group", "action_homomorphism", 500},
      {"ot_group", "inverse_exact", 500},
      {"ot_group", "h_preservation", 500},
      {"ot_group", "associativity", 200},
      {"forms", "omega_vs_fd", 1000},
      {"forms", "bilinearity_antisymmetry", 200},
      {"forms", "j_invariance", 200},
      {"forms", "gamma_invariance", 500},
      {"forms", "semipositivity", 10000},
      {"forms", "stokes", 0},
      {"foliation", "kernel_characterization", 10000},
      {"foliation", "leaf_disjointness", 0},
      {"foliation", "translation_no_solution", 100},
      {"foliation", "curve_integral", 100},
      {"foliation", "curve_constant_h", 20},
  };
  return table;
}

Config default_config() {
  Config c;
  for (const auto& s : suite_table()) {
    if (s.default_trials > 0) c.trials[std::string(s.name)] = s.default_trials;
  }
  return c;
}

namespace {

void validate_values(const Config& c) {
  if (c.precision_bits < 64 || c.precision_bits > 65536) config_error("precision_bits must be in [64, 65536]");
  if (c.unit_bound < 1) config_error("unit_bound must be >= 1");
  if (c.word_length < 1) config_error("word_length must be >= 1");
  for (const auto& [name, n] : c.trials) {
    if (n < 1) config_error("trials for " + name + " must be >= 1");
  }
  const auto& t = c.tolerances;
  for (double x : {t.tau_det, t.tau_sign, t.fd_step, t.fd_relative, t.residual, t.log_sum, t.semipositivity,
                   t.stokes, t.stokes_order, t.curve, t.curve_constant}) {
    if (!(x > 0) || !std::isfinite(x)) config_error("tolerances must be positive and finite");
  }
  if (t.stokes_surface_nodes < 8 || t.stokes_boundary_nodes < 8 || t.curve_nodes < 8) {
    config_error("quadrature sizes must be >= 8");
  }
}

}  // namespace

void validate_config(const Config& c) {
  if (c.polynomial.empty()) config_error("polynomial is required");
  validate_values(c);
}

Config parse_config(const Json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  Config c = default_config();
  static const std::set<std::string> known{"schema",    "polynomial", "precision_bits", "unit_bound", "seed",
                                           "word_length", "trials",   "tolerances",     "assume_irreducible"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) config_error("unknown config key \"" + key + "\"");
  }
  if (j.contains("polynomial")) {
    const auto& p = j["polynomial"];
    if (!p.is_array()) config_error("polynomial must be an array of coefficients, constant term first");
    for (const auto& v : p) c.polynomial.push_back(parse_coefficient(v));
  }
  if (j.contains("precision_bits")) c.precision_bits = get_integer<unsigned>(j["precision_bits"], "precision_bits", 0, 1 << 20);
  if (j.contains("unit_bound")) c.unit_bound = get_integer<int>(j["unit_bound"], "unit_bound", -1000, 1000);
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0)) {
      config_error("seed must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("word_length")) c.word_length = get_integer<int>(j["word_length"], "word_length", -100, 8);
  if (j.contains("assume_irreducible")) {
    if (!j["assume_irreducible"].is_boolean()) config_error("assume_irreducible must be a boolean");
    c.assume_irreducible = j["assume_irreducible"].get<bool>();
  }
  if (j.contains("trials")) {
    const auto& t = j["trials"];
    if (t.is_number()) {
      const int n = get_integer<int>(t, "trials", -1000000000, 1000000000);
      for (auto& [name, value] : c.trials) value = n;
    } else if (t.is_object()) {
      for (const auto& [name, value] : t.items()) {
        if (!c.trials.contains(name)) config_error("unknown or fixed-size suite in trials: \"" + name + "\"");
        c.trials[name] = get_integer<int>(value, "trials." + name, -1000000000, 1000000000);
      }
    } else {
      config_error("trials must be an integer or an object");
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) config_error("tolerances must be an object");
    auto& tol = c.tolerances;
    const std::map<std::string, double*> reals{
        {"tau_det", &tol.tau_det},   {"tau_sign", &tol.tau_sign},         {"fd_step", &tol.fd_step},
        {"fd_relative", &tol.fd_relative}, {"residual", &tol.residual},   {"log_sum", &tol.log_sum},
        {"semipositivity", &tol.semipositivity}, {"stokes", &tol.stokes}, {"stokes_order", &tol.stokes_order},
        {"curve", &tol.curve},       {"curve_constant", &tol.curve_constant}};
    const std::map<std::string, int*> sizes{{"stokes_surface_nodes", &tol.stokes_surface_nodes},
                                            {"stokes_boundary_nodes", &tol.stokes_boundary_nodes},
                                            {"curve_nodes", &tol.curve_nodes}};
    for (const auto& [name, value] : t.items()) {
      if (auto it = reals.find(name); it != reals.end()) {
        *it->second = get_double(value, "tolerances." + name);
      } else if (auto is = sizes.find(name); is != sizes.end()) {
        *is->second = get_integer<int>(value, "tolerances." + name, -1000000, 1000000);
      } else {
        config_error("unknown tolerance \"" + name + "\"");
      }
    }
  }
  validate_values(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

Json config_to_json(const Config& c) {
  Json j;
  Json poly = Json::array();
  for (const auto& x : c.polynomial) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
      poly.push_back(static_cast<std::int64_t>(x));
    } else {
      poly.push_back(x.str());
    }
  }
  j["polynomial"] = poly;
  j["precision_bits"] = c.precision_bits;
  j["unit_bound"] = c.unit_bound;
  j["seed"] = c.seed;
  j["word_length"] = c.word_length;
  j["assume_irreducible"] = c.assume_irreducible;
  Json trials = Json::object();
  for (const auto& s : suite_table()) {
    if (auto it = c.trials.find(std::string(s.name)); it != c.trials.end()) trials[it->first] = it->second;
  }
  j["trials"] = trials;
  const auto& t = c.tolerances;
  j["tolerances"] = {{"tau_det", t.tau_det},
                     {"tau_sign", t.tau_sign},
                     {"fd_step", t.fd_step},
                     {"fd_relative", t.fd_relative},
                     {"residual", t.residual},
                     {"log_sum", t.log_sum},
                     {"semipositivity", t.semipositivity},
                     {"stokes", t.stokes},
                     {"stokes_order", t.stokes_order},
                     {"curve", t.curve},
                     {"curve_constant", t.curve_constant},
                     {"stokes_surface_nodes", t.stokes_surface_nodes},
                     {"stokes_boundary_nodes", t.stokes_boundary_nodes},
                     {"curve_nodes", t.curve_nodes}};
  return j;
}

std::string write_json(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += "\n";
  return out;
}

}  // namespace otm::report
