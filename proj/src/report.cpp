#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "otm/cli_report.hpp"
#include "otm/error.hpp"
#include "otm/foliation.hpp"
#include "suites.hpp"

namespace otm::report {

namespace {

NumberField make_field(const Config& c) {
  validate_config(c);
  return NumberField(validate_polynomial(c.polynomial, c.assume_irreducible), c.precision_bits);
}

Json base_report(const Config& c, std::string_view command) {
  Json j;
  j["schema"] = kSchema;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = command;
  j["config"] = config_to_json(c);
  return j;
}

std::string decimal(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

Json field_json(const NumberField& K) {
  const auto& emb = K.embeddings();
  const int digits = std::min(emb.tolerance_digits, 40);
  Json roots = Json::array();
  PrecisionScope scope(emb.precision_bits);
  for (std::size_t i = 0; i < emb.roots.size(); ++i) {
    roots.push_back({{"re", emb.roots_double[i].real()},
                     {"im", emb.roots_double[i].imag()},
                     {"re_decimal", decimal(emb.roots[i].re, digits)},
                     {"im_decimal", decimal(emb.roots[i].im, digits)}});
  }
  return {{"polynomial", coeffs_json(K.polynomial().coeffs())},
          {"polynomial_text", K.polynomial().to_string()},
          {"degree", K.degree()},
          {"signature", {{"s", K.signature().s}, {"t", K.signature().t}}},
          {"order", "Z[a]"},
          {"precision_bits", emb.precision_bits},
          {"root_tolerance_digits", emb.tolerance_digits},
          {"roots", roots}};
}

Json unit_json(const Unit& u, const NumberField& K) {
  const auto l = log_embedding(u, K);
  return {{"coefficients", coeffs_json(u.element.coeffs())},
          {"text", u.element.to_string()},
          {"norm", u.norm_sign},
          {"log", l.components},
          {"log_sum", l.sum}};
}

Json units_json(const std::vector<FoundUnit>& found, const NumberField& K, int bound) {
  Json list = Json::array();
  for (const auto& f : found) {
    Json u = unit_json(f.unit, K);
    u["totally_positive"] = f.power == 1;
    u["positive_power"] = f.power;
    list.push_back(std::move(u));
  }
  return {{"bound", bound}, {"count", found.size()}, {"found", list}};
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json certificate_json(const AdmissibleCertificate& cert, const NumberField& K) {
  Json gens = Json::array();
  for (const auto& g : cert.generators) gens.push_back(unit_json(g, K));
  return {{"generators", gens},
          {"log_matrix", matrix_json(cert.log_matrix)},
          {"projected_matrix", matrix_json(cert.projected_matrix)},
          {"det", cert.det},
          {"abs_det", std::fabs(cert.det)},
          {"singular_values", cert.singular_values},
          {"rank", cert.rank},
          {"tau_det", cert.tau_det},
          {"admissible", cert.admissible}};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string signature_summary(const NumberField& K) {
  std::ostringstream os;
  const auto& emb = K.embeddings();
  os << "polynomial: " << K.polynomial().to_string() << "\n";
  os << "signature: s=" << K.signature().s << " t=" << K.signature().t << "\n";
  PrecisionScope scope(emb.precision_bits);
  const int digits = std::min(emb.tolerance_digits, 25);
  for (std::size_t i = 0; i < emb.roots.size(); ++i) {
    os << "root " << i + 1 << ": " << decimal(emb.roots[i].re, digits);
    if (emb.roots[i].im != 0) os << (emb.roots[i].im > 0 ? " + " : " - ") << decimal(abs(emb.roots[i].im), digits) << " i";
    os << "\n";
  }
  return os.str();
}

struct Prepared {
  NumberField field;
  std::vector<FoundUnit> found;
  std::vector<Unit> generators;
};

Prepared prepare(const Config& c, bool with_generators) {
  Prepared p{make_field(c), {}, {}};
  p.found = search_units(p.field, c.unit_bound);
  if (with_generators) p.generators = select_generators(p.found, p.field, c.tolerances.tau_det);
  return p;
}

}  // namespace

Outcome cmd_signature(const Config& c) {
  const NumberField K = make_field(c);
  Outcome out;
  out.report = base_report(c, "signature");
  out.report["field"] = field_json(K);
  out.summary = signature_summary(K);
  return out;
}

Outcome cmd_units(const Config& c) {
  const Prepared p = prepare(c, false);
  Outcome out;
  out.report = base_report(c, "units");
  out.report["field"] = field_json(p.field);
  out.report["units"] = units_json(p.found, p.field, c.unit_bound);
  std::ostringstream os;
  os << signature_summary(p.field);
  os << "units with coefficients in [-" << c.unit_bound << ", " << c.unit_bound << "]: " << p.found.size() << "\n";
  const std::size_t shown = std::min<std::size_t>(p.found.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& u = p.found[i].unit;
    os << "  " << u.element.to_string() << "  norm " << u.norm_sign << "  l =";
    for (double x : log_embedding(u, p.field).components) os << " " << fmt(x);
    os << "\n";
  }
  if (shown < p.found.size()) os << "  ... " << p.found.size() - shown << " more in the report\n";
  out.summary = os.str();
  return out;
}

Outcome cmd_admissible(const Config& c) {
  const Prepared p = prepare(c, true);
  const auto cert = check_admissible(p.generators, p.field, c.tolerances.tau_det);
  Outcome out;
  out.report = base_report(c, "admissible");
  out.report["field"] = field_json(p.field);
  out.report["units"] = units_json(p.found, p.field, c.unit_bound);
  out.report["admissibility"] = certificate_json(cert, p.field);
  std::ostringstream os;
  os << signature_summary(p.field);
  for (const auto& g : cert.generators) os << "generator: " << g.element.to_string() << "\n";
  os << "det: " << fmt(cert.det) << "  rank: " << cert.rank << "  admissible: " << (cert.admissible ? "yes" : "no")
     << "\n";
  out.summary = os.str();
  out.exit_code = cert.admissible ? 0 : 1;
  return out;
}

Outcome cmd_fixed_point(const Config& c, const std::string& word) {
  const Prepared p = prepare(c, true);
  const GroupElement g = parse_word(word, p.generators, p.field);
  const auto cert = fixed_point(g, p.field, c.tolerances.tau_sign);
  if (cert.kind == CertificateKind::IdentityRejected) {
    throw Error(ErrorCode::IdentityElement, "word \"" + word + "\" is the identity");
  }
  Json gens = Json::array();
  for (const auto& u : p.generators) gens.push_back(coeffs_json(u.element.coeffs()));
  Json j{{"word", word},
         {"generators", gens},
         {"gamma", {{"u", coeffs_json(g.u.element.coeffs())}, {"a", coeffs_json(g.a.coeffs())}}},
         {"kind", std::string(to_string(cert.kind))},
         {"residual", cert.residual},
         {"max_imag", cert.max_imag},
         {"precision_bits", cert.precision_bits}};
  if (cert.kind == CertificateKind::RealFixedPoint) {
    j["fixed_point"] = cert.fixed_point;
  } else {
    j["slot"] = cert.slot;
    j["translation_values"] = cert.translation_values;
  }
  Outcome out;
  out.report = base_report(c, "fixed-point");
  out.report["field"] = field_json(p.field);
  out.report["certificate"] = j;
  std::ostringstream os;
  os << "word: " << word << "  gamma = (" << g.u.element.to_string() << ", " << g.a.to_string() << ")\n";
  os << "certificate: " << to_string(cert.kind) << "\n";
  if (cert.kind == CertificateKind::RealFixedPoint) {
    os << "fixed point:";
    for (double z : cert.fixed_point) os << " " << fmt(z);
    os << "\n";
  } else {
    os << "inconsistent slot: " << cert.slot + 1 << "\n";
  }
  os << "residual: " << fmt(cert.residual) << "\n";
  out.summary = os.str();
  return out;
}

Outcome cmd_verify(const Config& c, const SuiteSelection& selection) {
  const Prepared p = prepare(c, true);
  const auto cert = check_admissible(p.generators, p.field, c.tolerances.tau_det);
  const Context ctx{c, p.field, p.found, p.generators, affine_alphabet(p.generators, p.field)};
  const auto results = run_suites(ctx, selection);

  Outcome out;
  out.report = base_report(c, "verify");
  if (selection.suite) {
    out.report["selection"] = {{"suite", *selection.suite}};
    if (selection.trial) out.report["selection"]["trial"] = *selection.trial;
  }
  out.report["field"] = field_json(p.field);
  out.report["units"] = units_json(p.found, p.field, c.unit_bound);
  out.report["admissibility"] = certificate_json(cert, p.field);

  Json suites = Json::array();
  int failed = 0;
  bool precision = false;
  std::ostringstream os;
  os << signature_summary(p.field);
  os << "admissible: " << (cert.admissible ? "yes" : "no") << "  det " << fmt(cert.det) << "\n";
  for (const auto& r : results) {
    suites.push_back({{"module", r.info->module},
                      {"name", r.info->name},
                      {"passed", r.passed()},
                      {"trials", r.trials},
                      {"failures", r.failures},
                      {"max_residual", r.max_residual},
                      {"bound", r.bound},
                      {"failure_records", r.failure_records}});
    if (!r.passed()) ++failed;
    precision = precision || r.precision_exhausted;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-12s %-26s trials=%-6d max_residual=%.3e bound=%.1e\n",
                  r.passed() ? "PASS" : "FAIL", std::string(r.info->module).c_str(),
                  std::string(r.info->name).c_str(), r.trials, r.max_residual, r.bound);
    os << line;
    for (const auto& rec : r.failure_records) {
      os << "     replay: " << rec["replay"].get<std::string>() << "\n";
    }
  }
  const int total = static_cast<int>(results.size());
  out.report["suites"] = suites;
  out.exit_code = precision ? 3 : (failed > 0 || !cert.admissible ? 1 : 0);
  out.report["summary"] = {{"suites", total},
                           {"passed", total - failed},
                           {"failed", failed},
                           {"status", out.exit_code == 0 ? "pass" : (out.exit_code == 3 ? "precision_exhausted" : "fail")},
                           {"exit_code", out.exit_code}};
  os << "verify: " << total - failed << "/" << total << " suites passed\n";
  out.summary = os.str();
  return out;
}

namespace {

IntCoeffs parse_poly_flag(const std::string& text) {
  IntCoeffs out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorCode::InvalidConfig, "empty coefficient in --poly");
    item = item.substr(b, e - b + 1);
    const std::size_t start = (item[0] == '-' || item[0] == '+') ? 1 : 0;
    if (item.size() == start || item.find_first_not_of("0123456789", start) != std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "coefficient \"" + item + "\" is not an integer");
    }
    out.emplace_back(item[0] == '+' ? item.substr(1) : item);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification harness for OT-manifold constructions over number fields."};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_path, poly, word, suite;
  std::uint64_t seed = 0;
  int bound = 0, trial = 0;
  unsigned bits = 0;
  bool assume = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* out_opt = app.add_option("--out", out_path, "write the JSON report here");
  auto* poly_opt = app.add_option("--poly", poly, "coefficients c0,c1,...,1 (overrides the config)");
  auto* seed_opt = app.add_option("--seed", seed, "base seed for all suites");
  auto* bound_opt = app.add_option("--bound", bound, "unit search box [-B, B]^n");
  auto* bits_opt = app.add_option("--precision-bits", bits, "working precision of the embeddings");
  app.add_flag("--assume-irreducible", assume, "skip the factor search above degree 8");

  auto* sig_cmd = app.add_subcommand("signature", "signature and embeddings");
  auto* units_cmd = app.add_subcommand("units", "unit search and log embeddings");
  auto* adm_cmd = app.add_subcommand("admissible", "generator selection and admissibility certificate");
  auto* fp_cmd = app.add_subcommand("fixed-point", "leaf-disjointness certificate for one word");
  fp_cmd->add_option("--word", word, "word such as \"u a\" or \"u1^-1 -a2\"")->required();
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  auto* suite_opt = verify_cmd->add_option("--suite", suite, "run one suite or module");
  auto* trial_opt = verify_cmd->add_option("--trial", trial, "replay a single trial of --suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string command = "unknown";
  Config config;
  try {
    config = config_opt->count() ? load_config(config_path) : default_config();
    if (poly_opt->count()) config.polynomial = parse_poly_flag(poly);
    if (seed_opt->count()) config.seed = seed;
    if (bound_opt->count()) config.unit_bound = bound;
    if (bits_opt->count()) config.precision_bits = bits;
    if (assume) config.assume_irreducible = true;

    Outcome result;
    if (sig_cmd->parsed()) {
      command = "signature";
      result = cmd_signature(config);
    } else if (units_cmd->parsed()) {
      command = "units";
      result = cmd_units(config);
    } else if (adm_cmd->parsed()) {
      command = "admissible";
      result = cmd_admissible(config);
    } else if (fp_cmd->parsed()) {
      command = "fixed-point";
      result = cmd_fixed_point(config, word);
    } else {
      command = "verify";
      SuiteSelection sel;
      if (suite_opt->count()) sel.suite = suite;
      if (trial_opt->count()) sel.trial = trial;
      result = cmd_verify(config, sel);
    }
    if (out_opt->count()) write_file(out_path, write_json(result.report));
    out << result.summary;
    return result.exit_code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    err << "error: " << e.what() << "\n";
    if (out_opt->count()) {
      Json j = base_report(config, command);
      j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", code}};
      try {
        write_file(out_path, write_json(j));
      } catch (const Error&) {
      }
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace otm::report
