#include "suites.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "otm/error.hpp"
#include "otm/foliation.hpp"
#include "otm/forms.hpp"

namespace otm::report {

namespace {

struct TrialResult {
  double residual = 0;
  Json inputs = Json::object();
  bool ok = true;  // extra condition besides residual <= bound
};

struct Suite {
  int count = 0;
  double bound = 0;
  std::function<TrialResult(int, std::mt19937_64&)> run;
};

std::mt19937_64 trial_rng(std::uint64_t seed, std::string_view suite, int trial) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : suite) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  const auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffU); };
  std::seed_seq seq{lo(seed), lo(seed >> 32), lo(h), lo(h >> 32), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

double max_distance(const CVector& a, const CVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

AlgebraicInt random_element(std::mt19937_64& rng, const NumberField& field, int range = 9) {
  std::uniform_int_distribution<int> coeff(-range, range);
  IntCoeffs c(field.degree());
  for (auto& x : c) x = coeff(rng);
  return field.element(c);
}

Json element_json(const GroupElement& g) {
  return {{"u", coeffs_json(g.u.element.coeffs())}, {"a", coeffs_json(g.a.coeffs())}};
}

Point stokes_center(Signature sig) {
  Point p{CVector(sig.m())};
  for (int i = 0; i < sig.s; ++i) p.z[i] = {0.0, 2.0};
  return p;
}

Suite build(std::string_view name, const Context& ctx) {
  const NumberField& K = ctx.field;
  const Signature sig = K.signature();
  const Tolerances& tol = ctx.config.tolerances;
  const auto trials = [&] { return ctx.config.trials.at(std::string(name)); };
  const int L = ctx.config.word_length;
  const std::vector<Letter>& alphabet = ctx.alphabet;

  if (name == "root_reconstruction") {
    const auto& emb = K.embeddings();
    const int n = sig.degree();
    PrecisionScope scope(emb.precision_bits);
    const Real budget = emb.tolerance() * n * pow(Real(2), n);
    return {1, budget.convert_to<double>(), [&K, n](int, std::mt19937_64&) {
              const auto& e = K.embeddings();
              PrecisionScope inner(e.precision_bits);
              std::vector<MpComplex> prod{MpComplex(Real(1), Real(0))};
              for (const auto& r : e.roots) {
                std::vector<MpComplex> next(prod.size() + 1);
                for (std::size_t i = 0; i < prod.size(); ++i) {
                  next[i + 1] += prod[i];
                  next[i] -= prod[i] * r;
                }
                prod = next;
              }
              Real worst = 0;
              for (int i = 0; i <= n; ++i) {
                const Real d = (prod[i] - MpComplex(to_real(K.polynomial()[i]))).abs();
                if (d > worst) worst = d;
              }
              return TrialResult{worst.convert_to<double>()};
            }};
  }
  if (name == "conjugate_pairing") {
    const double eps = [&] {
      PrecisionScope scope(K.embeddings().precision_bits);
      return K.embeddings().tolerance().convert_to<double>();
    }();
    return {1, eps, [&K, sig](int, std::mt19937_64&) {
              const auto& e = K.embeddings();
              PrecisionScope scope(e.precision_bits);
              Real worst = 0;
              bool upper = true;
              for (int i = 0; i < sig.t; ++i) {
                const auto& a = e.roots[sig.s + i];
                const auto& b = e.roots[sig.s + sig.t + i];
                worst = std::max<Real>(worst, abs(a.re - b.re) + abs(a.im + b.im));
                upper = upper && a.im > 0;
              }
              for (int i = 0; i < sig.s; ++i) worst = std::max<Real>(worst, abs(e.roots[i].im));
              return TrialResult{worst.convert_to<double>(), Json::object(), upper};
            }};
  }
  if (name == "embedding_homomorphism") {
    return {trials(), tol.residual, [&K](int, std::mt19937_64& rng) {
              const auto a = random_element(rng, K), b = random_element(rng, K);
              const auto ea = embed(a, K.embeddings()), eb = embed(b, K.embeddings());
              const auto prod = embed(a * b, K.embeddings()), sum = embed(a + b, K.embeddings());
              double worst = 0;
              for (std::size_t i = 0; i < ea.size(); ++i) {
                const auto want = ea[i] * eb[i];
                worst = std::max(worst, std::abs(prod[i] - want) / std::max(1.0, std::abs(want)));
                worst = std::max(worst, std::abs(sum[i] - ea[i] - eb[i]) / std::max(1.0, std::abs(sum[i])));
              }
              return TrialResult{worst, {{"a", coeffs_json(a.coeffs())}, {"b", coeffs_json(b.coeffs())}}};
            }};
  }
  if (name == "norm_consistency") {
    return {trials(), tol.residual, [&K](int, std::mt19937_64& rng) {
              const auto a = random_element(rng, K);
              const BigInt n = norm_exact(a, K.embeddings());
              std::complex<double> prod = 1.0;
              for (const auto& v : embed(a, K.embeddings())) prod *= v;
              const double nd = n.convert_to<double>();
              const double r = std::abs(prod - nd) / std::max(1.0, std::fabs(nd));
              return TrialResult{r, {{"a", coeffs_json(a.coeffs())}, {"norm", n.str()}}};
            }};
  }
  if (name == "log_sum_zero") {
    return {static_cast<int>(ctx.found.size()), tol.log_sum * sig.m(), [&ctx, &K](int k, std::mt19937_64&) {
              const auto& u = ctx.found[k].unit;
              return TrialResult{std::fabs(log_embedding(u, K).sum), {{"unit", coeffs_json(u.element.coeffs())}}};
            }};
  }
  if (name == "log_additivity") {
    return {trials(), tol.residual, [&ctx, &K](int, std::mt19937_64& rng) {
              std::uniform_int_distribution<std::size_t> pick(0, ctx.found.size() - 1);
              const auto& u = ctx.found[pick(rng)].unit;
              const auto& v = ctx.found[pick(rng)].unit;
              const auto lu = log_embedding(u, K), lv = log_embedding(v, K), luv = log_embedding(u * v, K);
              double worst = 0;
              for (std::size_t i = 0; i < lu.components.size(); ++i) {
                worst = std::max(worst, std::fabs(luv.components[i] - lu.components[i] - lv.components[i]));
              }
              return TrialResult{worst,
                                 {{"u", coeffs_json(u.element.coeffs())}, {"v", coeffs_json(v.element.coeffs())}}};
            }};
  }
  if (name == "square_positivity") {
    return {static_cast<int>(ctx.found.size()), tol.residual, [&ctx, &K, &tol](int k, std::mt19937_64&) {
              const auto& f = ctx.found[k];
              const auto expected = f.power == 1 ? f.unit.element : f.unit.element * f.unit.element;
              const auto sq = f.unit * f.unit;
              const bool ok = f.positive.element == expected && is_totally_positive(f.positive, K, tol.tau_sign) &&
                              is_totally_positive(sq, K, tol.tau_sign);
              return TrialResult{0.0, {{"unit", coeffs_json(f.unit.element.coeffs())}, {"power", f.power}}, ok};
            }};
  }
  if (name == "admissible_permutation") {
    return {1, tol.residual, [&ctx, &K, &tol](int, std::mt19937_64&) {
              const auto cert = check_admissible(ctx.generators, K, tol.tau_det);
              std::vector<Unit> other(ctx.generators.rbegin(), ctx.generators.rend());
              if (other.size() == 1) other[0] = inverse(other[0]);
              const auto cert2 = check_admissible(other, K, tol.tau_det);
              const double r = std::fabs(std::fabs(cert2.det) - std::fabs(cert.det));
              return TrialResult{r, {{"det", cert.det}, {"det_permuted", cert2.det}},
                                 cert.admissible && cert2.admissible};
            }};
  }
  if (name == "action_homomorphism") {
    return {trials(), tol.residual, [&K, &alphabet, sig, L](int, std::mt19937_64& rng) {
              const auto w1 = random_word(rng, alphabet, L), w2 = random_word(rng, alphabet, L);
              const Point z = sample_point(rng, sig);
              const Point lhs = act(compose(w1.element, w2.element), z, K);
              const Point rhs = act(w1.element, act(w2.element, z, K), K);
              return TrialResult{max_distance(lhs.z, rhs.z),
                                 {{"g1", w1.text}, {"g2", w2.text}, {"z", cvector_json(z.z)}}};
            }};
  }
  if (name == "inverse_exact") {
    return {trials(), tol.residual, [&alphabet, L](int, std::mt19937_64& rng) {
              const auto w = random_word(rng, alphabet, L);
              const auto inv = inverse(w.element);
              const bool ok = is_identity(compose(w.element, inv)) && is_identity(compose(inv, w.element));
              return TrialResult{0.0, {{"g", w.text}, {"inverse", element_json(inv)}}, ok};
            }};
  }
  if (name == "h_preservation") {
    return {trials(), tol.residual, [&K, &alphabet, sig, L](int, std::mt19937_64& rng) {
              const auto w = random_word(rng, alphabet, L);
              const Point z = sample_point(rng, sig);
              const Point gz = act(w.element, z, K);
              double violation = 0;
              for (int i = 0; i < sig.s; ++i) violation = std::max(violation, -gz.z[i].imag());
              return TrialResult{violation, {{"g", w.text}, {"z", cvector_json(z.z)}}, in_domain(gz, sig)};
            }};
  }
  if (name == "associativity") {
    return {trials(), tol.residual, [&alphabet, L](int, std::mt19937_64& rng) {
              const auto a = random_word(rng, alphabet, L), b = random_word(rng, alphabet, L),
                         c = random_word(rng, alphabet, L);
              const bool ok = compose(compose(a.element, b.element), c.element) ==
                              compose(a.element, compose(b.element, c.element));
              return TrialResult{0.0, {{"g1", a.text}, {"g2", b.text}, {"g3", c.text}}, ok};
            }};
  }
  if (name == "omega_vs_fd") {
    return {trials(), tol.fd_relative, [sig, &tol](int, std::mt19937_64& rng) {
              const Point p = sample_point(rng, sig);
              const Tangent v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
              const double closed = omega_closed(p, v, w, sig);
              double r = std::fabs(omega_fd(p, v, w, sig, tol.fd_step) - closed) / (1 + std::fabs(closed));
              std::string method = "central";
              if (r > tol.fd_relative) {
                r = std::fabs(omega_fd_extrapolated(p, v, w, sig, tol.fd_step) - closed) / (1 + std::fabs(closed));
                method = "richardson";
              }
              return TrialResult{r,
                                 {{"p", cvector_json(p.z)}, {"v", cvector_json(v.v)}, {"w", cvector_json(w.v)},
                                  {"method", method}}};
            }};
  }
  if (name == "bilinearity_antisymmetry") {
    return {trials(), tol.residual, [sig](int, std::mt19937_64& rng) {
              const Point p = sample_point(rng, sig);
              const Tangent u = sample_tangent(rng, sig), v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
              std::uniform_real_distribution<double> coeff(-2, 2);
              const double a = coeff(rng), b = coeff(rng);
              Tangent mix{CVector(u.v.size())};
              for (std::size_t k = 0; k < u.v.size(); ++k) mix.v[k] = a * u.v[k] + b * v.v[k];
              const double lhs = omega_closed(p, mix, w, sig);
              const double rhs = a * omega_closed(p, u, w, sig) + b * omega_closed(p, v, w, sig);
              const double lin = std::fabs(lhs - rhs) / (1 + std::fabs(lhs));
              const double anti = std::fabs(omega_closed(p, v, w, sig) + omega_closed(p, w, v, sig));
              return TrialResult{std::max(lin, anti), {{"p", cvector_json(p.z)}, {"a", a}, {"b", b}}};
            }};
  }
  if (name == "j_invariance") {
    return {trials(), tol.residual, [sig](int, std::mt19937_64& rng) {
              const Point p = sample_point(rng, sig);
              const Tangent v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
              const Tangent iv = complex_structure(v), iw = complex_structure(w);
              const double base = omega_closed(p, v, w, sig);
              const double inv = std::fabs(omega_closed(p, iv, iw, sig) - base);
              const double type11 = std::fabs(omega_closed(p, iv, w, sig) + omega_closed(p, v, iw, sig));
              return TrialResult{std::max(inv, type11) / (1 + std::fabs(base)),
                                 {{"p", cvector_json(p.z)}, {"v", cvector_json(v.v)}, {"w", cvector_json(w.v)}}};
            }};
  }
  if (name == "gamma_invariance") {
    return {trials(), tol.residual, [&K, &alphabet, sig, L](int, std::mt19937_64& rng) {
              const auto word = random_word(rng, alphabet, L);
              const Point p = sample_point(rng, sig);
              const Tangent v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
              const auto r = invariance_residual(word.element, p, v, w, K);
              return TrialResult{std::max(r.omega, r.dc),
                                 {{"g", word.text},
                                  {"p", cvector_json(p.z)},
                                  {"v", cvector_json(v.v)},
                                  {"w", cvector_json(w.v)},
                                  {"omega", r.omega},
                                  {"dc", r.dc}}};
            }};
  }
  if (name == "semipositivity") {
    return {trials(), tol.semipositivity, [sig](int, std::mt19937_64& rng) {
              const Point p = sample_point(rng, sig);
              const Tangent v = sample_tangent(rng, sig);
              const double value = semipositivity_check(p, v, sig);
              return TrialResult{std::max(0.0, -value),
                                 {{"p", cvector_json(p.z)}, {"v", cvector_json(v.v)}, {"value", value}}};
            }};
  }
  if (name == "stokes") {
    // trial 0: reference disk; trial 1: observed order |log2(e(32)/e(64)) - 2|
    return {2, tol.stokes, [sig, &tol](int k, std::mt19937_64&) {
              const Point c = stokes_center(sig);
              if (k == 0) {
                const auto rep = stokes_residual(c, 0.3, 0, sig, tol.stokes_surface_nodes, tol.stokes_boundary_nodes);
                return TrialResult{rep.residual,
                                   {{"center", cvector_json(c.z)},
                                    {"radius", 0.3},
                                    {"surface", rep.surface_integral},
                                    {"boundary", rep.boundary_integral}}};
              }
              const double e32 = stokes_residual(c, 0.3, 0, sig, 32, tol.stokes_boundary_nodes).residual;
              const double e64 = stokes_residual(c, 0.3, 0, sig, 64, tol.stokes_boundary_nodes).residual;
              const double order = std::log2(e32 / e64);
              return TrialResult{0.0,
                                 {{"error_32", e32}, {"error_64", e64}, {"order", order}},
                                 std::fabs(order - 2) <= tol.stokes_order};
            }};
  }
  if (name == "kernel_characterization") {
    return {trials(), tol.semipositivity, [sig](int k, std::mt19937_64& rng) {
              const Point p = sample_point(rng, sig);
              Tangent v = sample_tangent(rng, sig);
              const bool kernel = k % 2 == 1;
              if (kernel) {
                for (int i = 0; i < sig.s; ++i) v.v[i] = 0;
              }
              const double value = semipositivity_check(p, v, sig);
              double h_norm = 0, norm = 0;
              for (int i = 0; i < sig.m(); ++i) {
                norm = std::max(norm, std::abs(v.v[i]));
                if (i < sig.s) h_norm = std::max(h_norm, std::abs(v.v[i]));
              }
              const bool in_kernel = zero_direction_test(p, v, sig);
              // a vector in the kernel has negligible H components
              const bool ok = kernel ? in_kernel : (in_kernel == (h_norm <= 1e-6 * norm));
              return TrialResult{kernel ? std::fabs(value) : 0.0,
                                 {{"p", cvector_json(p.z)}, {"v", cvector_json(v.v)}, {"kernel_sample", kernel}},
                                 ok};
            }};
  }
  if (name == "leaf_disjointness") {
    auto words = std::make_shared<std::vector<Word>>(enumerate_words(alphabet, L));
    return {static_cast<int>(words->size()), tol.residual, [words, &K, &tol](int k, std::mt19937_64&) {
              const auto& w = (*words)[k];
              const auto cert = fixed_point(w.element, K, tol.tau_sign);
              Json inputs{{"g", w.text}, {"certificate", std::string(to_string(cert.kind))}};
              if (cert.kind == CertificateKind::RealFixedPoint) inputs["fixed_point"] = cert.fixed_point;
              return TrialResult{cert.residual, inputs,
                                 cert.kind != CertificateKind::IdentityRejected && cert.max_imag == 0};
            }};
  }
  if (name == "translation_no_solution") {
    return {trials(), tol.residual, [&K, &tol](int, std::mt19937_64& rng) {
              auto a = random_element(rng, K);
              if (a.is_zero()) a = K.one();
              const auto cert = fixed_point(translation(a), K, tol.tau_sign);
              return TrialResult{0.0, {{"a", coeffs_json(a.coeffs())}, {"certificate", std::string(to_string(cert.kind))}},
                                 cert.kind == CertificateKind::NoSolution};
            }};
  }
  if (name == "curve_integral") {
    return {trials(), tol.curve, [sig, &tol](int, std::mt19937_64& rng) {
              std::uniform_real_distribution<double> c(-0.15, 0.15);
              std::uniform_int_distribution<int> degree(1, 3);
              DiskMap curve{sample_point(rng, sig, SampleBox{1.0, 5.0, -3.0, 3.0}), std::vector<CVector>(sig.m())};
              const int d = degree(rng);
              Json coeffs = Json::array();
              for (auto& slot : curve.coefficients) {
                for (int k = 0; k < d; ++k) slot.emplace_back(c(rng), c(rng));
                coeffs.push_back(cvector_json(slot));
              }
              const double value = holomorphic_curve_integral(curve, sig, tol.curve_nodes);
              return TrialResult{std::max(0.0, -value),
                                 {{"center", cvector_json(curve.center.z)}, {"coefficients", coeffs}, {"value", value}}};
            }};
  }
  if (name == "curve_constant_h") {
    return {trials(), tol.curve_constant, [sig, &tol](int, std::mt19937_64& rng) {
              std::uniform_real_distribution<double> c(-1.0, 1.0);
              DiskMap curve{sample_point(rng, sig), std::vector<CVector>(sig.m())};
              Json coeffs = Json::array();
              for (int i = 0; i < sig.m(); ++i) {
                if (i >= sig.s) {
                  for (int k = 0; k < 3; ++k) curve.coefficients[i].emplace_back(c(rng), c(rng));
                }
                coeffs.push_back(cvector_json(curve.coefficients[i]));
              }
              const double value = holomorphic_curve_integral(curve, sig, tol.curve_nodes);
              return TrialResult{std::fabs(value),
                                 {{"center", cvector_json(curve.center.z)}, {"coefficients", coeffs}}};
            }};
  }
  throw Error(ErrorCode::InvalidConfig, "unknown suite " + std::string(name));
}

std::string replay_command(const SuiteInfo& info, std::uint64_t seed, int trial) {
  return "verify --suite " + std::string(info.name) + " --trial " + std::to_string(trial) + " --seed " +
         std::to_string(seed);
}

}  // namespace

Json coeffs_json(const IntCoeffs& c) {
  Json out = Json::array();
  for (const auto& x : c) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
      out.push_back(static_cast<std::int64_t>(x));
    } else {
      out.push_back(x.str());
    }
  }
  return out;
}

Json cvector_json(const CVector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

std::vector<SuiteResult> run_suites(const Context& ctx, const SuiteSelection& selection) {
  if (selection.trial && !selection.suite) {
    throw Error(ErrorCode::InvalidConfig, "--trial requires --suite");
  }
  std::vector<SuiteResult> results;
  bool matched = false;
  for (const auto& info : suite_table()) {
    if (selection.suite && *selection.suite != info.name && *selection.suite != info.module) continue;
    matched = true;
    const Suite suite = build(info.name, ctx);
    SuiteResult res;
    res.info = &info;
    res.bound = suite.bound;
    int first = 0, last = suite.count;
    if (selection.trial) {
      if (*selection.trial < 0 || *selection.trial >= suite.count) {
        throw Error(ErrorCode::InvalidConfig, "trial index out of range for " + std::string(info.name));
      }
      first = *selection.trial;
      last = first + 1;
    }
    for (int trial = first; trial < last; ++trial) {
      auto rng = trial_rng(ctx.config.seed, info.name, trial);
      ++res.trials;
      TrialResult r;
      std::string error;
      try {
        r = suite.run(trial, rng);
      } catch (const Error& e) {
        r.ok = false;
        r.residual = std::numeric_limits<double>::quiet_NaN();
        error = e.what();
        if (exit_code_for(e.code()) == 3) res.precision_exhausted = true;
      }
      if (std::isfinite(r.residual)) res.max_residual = std::max(res.max_residual, r.residual);
      const bool passed = r.ok && r.residual <= suite.bound;
      if (passed) continue;
      ++res.failures;
      if (res.failure_records.size() >= static_cast<std::size_t>(kMaxFailureRecords)) continue;
      Json rec{{"suite", info.name},
               {"seed", ctx.config.seed},
               {"trial", trial},
               {"residual", r.residual},
               {"inputs", r.inputs},
               {"replay", replay_command(info, ctx.config.seed, trial)}};
      if (!error.empty()) rec["error"] = error;
      res.failure_records.push_back(std::move(rec));
    }
    results.push_back(std::move(res));
  }
  if (!matched) throw Error(ErrorCode::InvalidConfig, "unknown suite " + *selection.suite);
  return results;
}

}  // namespace otm::report
