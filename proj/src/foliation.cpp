#include "otm/foliation.hpp"

#include <cmath>
#include <numbers>

#include "otm/error.hpp"

namespace otm {

bool zero_direction_test(const Point& p, const Tangent& v, Signature sig) {
  return semipositivity_check(p, v, sig) < 1e-12;
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::RealFixedPoint: return "real_fixed_point";
    case CertificateKind::NoSolution: return "no_solution";
    case CertificateKind::IdentityRejected: return "identity_rejected";
  }
  return "unknown";
}

DisjointnessCertificate fixed_point(const GroupElement& g, const NumberField& field, double tau_sign) {
  DisjointnessCertificate cert{g, CertificateKind::IdentityRejected, {}, -1, {}, 0, 0, 0};
  const Signature sig = field.signature();
  if (is_identity(g)) {
    cert.kind = CertificateKind::IdentityRejected;
    return cert;
  }

  NumberField current = field;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const EmbeddingSet& emb = current.embeddings();
    const auto su = embed_precise(g.u.element, emb);
    const auto sa = embed_precise(g.a, emb);
    PrecisionScope scope(emb.precision_bits);
    bool degenerate = false;

    if (g.u.element.is_one()) {
      // u = 1: the system reads sigma_i(a) = 0, impossible for a != 0.
      cert.translation_values.clear();
      cert.slot = -1;
      for (int i = 0; i < sig.s; ++i) {
        cert.translation_values.push_back(sa[i].re.convert_to<double>());
        if (cert.slot < 0 && abs(sa[i].re) > tau_sign) cert.slot = i;
      }
      if (cert.slot >= 0) {
        cert.kind = CertificateKind::NoSolution;
        cert.precision_bits = emb.precision_bits;
        return cert;
      }
      degenerate = true;
    } else {
      std::vector<Real> z;
      for (int i = 0; i < sig.s && !degenerate; ++i) {
        const Real denom = 1 - su[i].re;
        if (abs(denom) <= tau_sign) {
          degenerate = true;
        } else {
          z.push_back(sa[i].re / denom);
        }
      }
      if (!degenerate) {
        cert.kind = CertificateKind::RealFixedPoint;
        cert.precision_bits = emb.precision_bits;
        cert.max_imag = 0;
        // substitute back with the double embeddings
        const auto du = embed(g.u.element, emb);
        const auto da = embed(g.a, emb);
        for (int i = 0; i < sig.s; ++i) {
          const double zi = z[i].convert_to<double>();
          cert.fixed_point.push_back(zi);
          const double r = std::fabs(du[i].real() * zi + da[i].real() - zi);
          cert.residual = std::max(cert.residual, r);
        }
        return cert;
      }
    }
    if (attempt < 3) current = current.refined();
  }
  throw Error(ErrorCode::PrecisionExhausted,
              "fixed-point system for (" + g.u.element.to_string() + ", " + g.a.to_string() +
                  ") stays degenerate after precision escalation");
}

LeafSuiteReport leaf_disjointness_suite(std::span<const Unit> generators, const NumberField& field,
                                        int max_length, double residual_bound) {
  LeafSuiteReport rep;
  const auto alphabet = affine_alphabet(generators, field);
  const auto words = enumerate_words(alphabet, max_length);
  const int s = field.signature().s;
  for (const auto& w : words) {
    ++rep.words;
    const auto cert = fixed_point(w.element, field);
    switch (cert.kind) {
      case CertificateKind::RealFixedPoint:
        ++rep.real_fixed_points;
        rep.max_residual = std::max(rep.max_residual, cert.residual);
        if (cert.residual >= residual_bound || cert.max_imag != 0 ||
            static_cast<int>(cert.fixed_point.size()) != s) {
          rep.failures.push_back(w.text);
        }
        break;
      case CertificateKind::NoSolution:
        ++rep.no_solution;
        if (!w.element.u.element.is_one()) rep.failures.push_back(w.text);
        break;
      case CertificateKind::IdentityRejected:
        rep.failures.push_back(w.text);
        break;
    }
  }
  return rep;
}

namespace {

struct CurveSample {
  Point point;
  Tangent derivative;
};

CurveSample evaluate_curve(const DiskMap& curve, std::complex<double> zeta, int m) {
  CurveSample out{curve.center, Tangent{CVector(m)}};
  for (int i = 0; i < m; ++i) {
    if (i >= static_cast<int>(curve.coefficients.size())) break;
    std::complex<double> value = 0, deriv = 0;
    const auto& c = curve.coefficients[i];
    // f_i - center_i = zeta * sum_k c_k zeta^k
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      value = value * zeta + c[k];
      deriv = deriv * zeta + c[k] * static_cast<double>(k + 1);
    }
    out.point.z[i] += value * zeta;
    out.derivative.v[i] = deriv;
  }
  return out;
}

void require_in_domain(const Point& p, Signature sig, std::complex<double> zeta) {
  if (!in_domain(p, sig)) {
    throw Error(ErrorCode::CurveLeavesDomain,
                "curve leaves H at zeta = (" + std::to_string(zeta.real()) + ", " +
                    std::to_string(zeta.imag()) + ")");
  }
}

}  // namespace

double holomorphic_curve_integral(const DiskMap& curve, Signature sig, int nodes) {
  const int m = sig.m();
  if (static_cast<int>(curve.center.z.size()) != m) {
    throw Error(ErrorCode::CurveLeavesDomain, "center has the wrong dimension");
  }
  const double two_pi = 2 * std::numbers::pi;
  for (int j = 0; j < 256; ++j) {
    const auto zeta = std::polar(1.0, two_pi * j / 256);
    require_in_domain(evaluate_curve(curve, zeta, m).point, sig, zeta);
  }
  for (int k = 0; k < 16; ++k) {
    for (int j = 0; j < 16; ++j) {
      const auto zeta = std::polar(k / 16.0, two_pi * j / 16);
      require_in_domain(evaluate_curve(curve, zeta, m).point, sig, zeta);
    }
  }

  const double dr = 1.0 / nodes;
  const double dtheta = two_pi / nodes;
  CompensatedSum total;
  for (int k = 0; k < nodes; ++k) {
    const double rho = (k + 0.5) * dr;
    CompensatedSum ring;
    for (int j = 0; j < nodes; ++j) {
      const auto zeta = std::polar(rho, (j + 0.5) * dtheta);
      const auto sample = evaluate_curve(curve, zeta, m);
      require_in_domain(sample.point, sig, zeta);
      // pullback: omega(f_* d_xi, f_* d_eta) with f_* d_eta = I f_* d_xi
      ring.add(semipositivity_check(sample.point, sample.derivative, sig));
    }
    total.add(ring.value() * rho * dr * dtheta);
  }
  return total.value();
}

}  // namespace otm
