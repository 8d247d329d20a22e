#include "otm/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "otm/error.hpp"

namespace otm {

Unit make_unit(const AlgebraicInt& a, const NumberField& field) {
  const BigInt n = norm_exact(a, field.embeddings());
  if (n != 1 && n != -1) {
    throw Error(ErrorCode::NotAUnit, a.to_string() + " has norm " + n.str());
  }
  return Unit{a, n > 0 ? 1 : -1};
}

Unit operator*(const Unit& a, const Unit& b) {
  return Unit{a.element * b.element, a.norm_sign * b.norm_sign};
}

Unit inverse(const Unit& u) { return Unit{inverse(u.element), u.norm_sign}; }

bool is_unit(const AlgebraicInt& a, const NumberField& field) {
  const BigInt n = norm_exact(a, field.embeddings());
  return n == 1 || n == -1;
}

bool is_totally_positive(const AlgebraicInt& a, const NumberField& field, double tau_sign) {
  NumberField current = field;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const auto& emb = current.embeddings();
    const auto values = embed_precise(a, emb);
    PrecisionScope scope(emb.precision_bits);
    bool undecided = false;
    bool positive = true;
    for (int i = 0; i < emb.signature.s; ++i) {
      if (abs(values[i].re) < tau_sign) {
        undecided = true;
        break;
      }
      if (values[i].re < 0) positive = false;
    }
    if (!undecided) return positive;
    if (attempt < 3) current = current.refined();
  }
  throw Error(ErrorCode::SignUndecidable,
              "real embedding of " + a.to_string() + " stays below the sign tolerance");
}

namespace {

double approximate_norm(const std::vector<long long>& c, const EmbeddingSet& emb) {
  std::complex<double> prod = 1.0;
  for (const auto& r : emb.roots_double) {
    std::complex<double> acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + static_cast<double>(*it);
    prod *= acc;
  }
  return prod.real();
}

}  // namespace

std::vector<FoundUnit> search_units(const NumberField& field, int bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidConfig, "unit bound must be >= 1");
  const int n = field.degree();
  const auto& emb = field.embeddings();

  std::vector<long long> c(n, -bound);
  std::vector<FoundUnit> found;
  for (;;) {
    const bool trivial = std::all_of(c.begin() + 1, c.end(), [](long long v) { return v == 0; }) &&
                         (c[0] == 0 || c[0] == 1 || c[0] == -1);
    if (!trivial) {
      const double approx = std::fabs(approximate_norm(c, emb));
      if (approx > 0.25 && approx < 4.0) {
        AlgebraicInt a = field.element(IntCoeffs(c.begin(), c.end()));
        const BigInt norm = norm_exact(a, emb);
        if (norm == 1 || norm == -1) {
          Unit u{a, norm > 0 ? 1 : -1};
          if (is_totally_positive(u, field)) {
            found.push_back({u, u, 1});
          } else {
            found.push_back({u, u * u, 2});
          }
        }
      }
    }
    int i = 0;
    while (i < n && c[i] == bound) c[i++] = -bound;
    if (i == n) break;
    ++c[i];
  }
  if (found.empty()) {
    throw Error(ErrorCode::NoUnitFound,
                "no unit other than +-1 with coefficients in [-" + std::to_string(bound) + ", " +
                    std::to_string(bound) + "]; raise the bound");
  }

  auto key = [](const FoundUnit& f) {
    BigInt mx = 0, sum = 0;
    for (const auto& v : f.unit.element.coeffs()) {
      mx = std::max(mx, BigInt(abs(v)));
      sum += abs(v);
    }
    return std::make_pair(mx, sum);
  };
  std::stable_sort(found.begin(), found.end(), [&](const FoundUnit& a, const FoundUnit& b) {
    const auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a.unit.element.coeffs() < b.unit.element.coeffs();
  });
  return found;
}

LogVector log_embedding(const Unit& u, const NumberField& field) {
  const auto& emb = field.embeddings();
  const Signature sig = emb.signature;
  const auto values = embed_precise(u.element, emb);
  PrecisionScope scope(emb.precision_bits);
  LogVector out;
  Real sum = 0;
  for (int i = 0; i < sig.m(); ++i) {
    Real v = log(values[i].abs());
    if (i >= sig.s) v *= 2;
    sum += v;
    out.components.push_back(v.convert_to<double>());
  }
  out.sum = sum.convert_to<double>();
  return out;
}

namespace {

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

}  // namespace

AdmissibleCertificate check_admissible(std::span<const Unit> generators, const NumberField& field,
                                       double tau_det) {
  const Signature sig = field.signature();
  if (static_cast<int>(generators.size()) != sig.s) {
    throw Error(ErrorCode::WrongGeneratorCount, "expected " + std::to_string(sig.s) +
                                                    " generators, got " +
                                                    std::to_string(generators.size()));
  }
  AdmissibleCertificate cert;
  cert.tau_det = tau_det;
  cert.log_matrix.resize(sig.s, sig.m());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (!is_totally_positive(generators[k], field)) {
      throw Error(ErrorCode::NotTotallyPositive, "generator " + std::to_string(k));
    }
    cert.generators.push_back(generators[k]);
    const auto l = log_embedding(generators[k], field);
    for (int j = 0; j < sig.m(); ++j) cert.log_matrix(static_cast<Eigen::Index>(k), j) = l.components[j];
  }
  cert.projected_matrix = cert.log_matrix.leftCols(sig.s);
  cert.det = cert.projected_matrix.determinant();
  cert.singular_values = singular_values(cert.log_matrix);
  cert.rank = static_cast<int>(std::count_if(cert.singular_values.begin(), cert.singular_values.end(),
                                             [&](double v) { return v > tau_det; }));
  cert.admissible = std::fabs(cert.det) > tau_det && cert.rank == sig.s;
  return cert;
}

std::vector<Unit> select_generators(std::span<const FoundUnit> found, const NumberField& field,
                                    double tau_det) {
  const Signature sig = field.signature();
  struct Candidate {
    Unit unit;
    std::vector<double> log;
    double length;
  };
  std::vector<Candidate> candidates;
  for (const auto& f : found) {
    const bool seen = std::any_of(candidates.begin(), candidates.end(), [&](const Candidate& c) {
      return c.unit.element == f.positive.element;
    });
    if (seen) continue;
    auto l = log_embedding(f.positive, field);
    double len2 = 0, inf = 0;
    for (double v : l.components) {
      len2 += v * v;
      inf = std::max(inf, std::fabs(v));
    }
    if (inf < 1e-12) continue;  // torsion
    candidates.push_back({f.positive, std::move(l.components), std::sqrt(len2)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.length < b.length; });

  std::vector<Unit> chosen;
  std::vector<std::vector<double>> rows;
  for (const auto& c : candidates) {
    if (static_cast<int>(chosen.size()) == sig.s) break;
    rows.push_back(std::vector<double>(c.log.begin(), c.log.begin() + sig.s));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), sig.s);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int j = 0; j < sig.s; ++j) m(static_cast<Eigen::Index>(r), j) = rows[r][j];
    const auto sv = singular_values(m);
    if (!sv.empty() && sv.back() > tau_det) {
      chosen.push_back(c.unit);
    } else {
      rows.pop_back();
    }
  }
  if (static_cast<int>(chosen.size()) < sig.s) {
    throw Error(ErrorCode::NoUnitFound,
                "found " + std::to_string(chosen.size()) + " independent totally positive units, need " +
                    std::to_string(sig.s) + "; raise the bound");
  }
  return chosen;
}

}  // namespace otm
