#pragma once

#include <span>
#include <string>
#include <vector>

#include "otm/forms.hpp"
#include "otm/group.hpp"

namespace otm {

/// v lies in the zero foliation of omega: omega(v, Iv) < 1e-12. The kernel
/// is spanned by the C^t directions.
bool zero_direction_test(const Point& p, const Tangent& v, Signature sig);

enum class CertificateKind { RealFixedPoint, NoSolution, IdentityRejected };

std::string_view to_string(CertificateKind kind);

/// Why gamma moves every leaf {z_1..z_s fixed} x C^t off itself: either the
/// fixed-point system sigma_i(u) z_i + sigma_i(a) = z_i (i <= s) only has real
/// solutions z_i = sigma_i(a) / (1 - sigma_i(u)), which lie outside H, or
/// u = 1 and some sigma_i(a) != 0 makes the system inconsistent.
struct DisjointnessCertificate {
  GroupElement gamma;
  CertificateKind kind = CertificateKind::IdentityRejected;
  std::vector<double> fixed_point;         // RealFixedPoint: z_1..z_s
  int slot = -1;                           // NoSolution: first inconsistent slot (zero based)
  std::vector<double> translation_values;  // NoSolution: sigma_i(a), i <= s
  double max_imag = 0;                     // imaginary parts are identically zero
  double residual = 0;                     // max |sigma_i(u) z_i + sigma_i(a) - z_i|
  unsigned precision_bits = 0;
};

/// Solves the fixed-point system in real arithmetic at the field precision.
/// The identity yields an IdentityRejected certificate. A value of
/// |1 - sigma_i(u)| or |sigma_i(a)| at or below tau_sign with the exact
/// element nontrivial is a precision fault: the precision is doubled up to
/// three times, after which PrecisionExhausted is thrown.
DisjointnessCertificate fixed_point(const GroupElement& g, const NumberField& field,
                                    double tau_sign = kDefaultSignTolerance);

struct LeafSuiteReport {
  int words = 0;
  int real_fixed_points = 0;
  int no_solution = 0;
  double max_residual = 0;
  std::vector<std::string> failures;  // words whose certificate did not hold
  bool passed() const { return failures.empty(); }
};

/// Runs fixed_point on every distinct non-identity element given by words of
/// length <= max_length over the affine alphabet of the generators and the
/// power basis.
LeafSuiteReport leaf_disjointness_suite(std::span<const Unit> generators, const NumberField& field,
                                        int max_length = 3, double residual_bound = 1e-9);

/// Polynomial disk map D -> H^s x C^t:  f_i(zeta) = center_i + sum_k c_{i,k} zeta^(k+1).
struct DiskMap {
  Point center;
  std::vector<CVector> coefficients;  // one vector per slot, may be empty
};

/// Integral of the pullback of omega over the unit disk, polar midpoint rule
/// on nodes x nodes cells. The map is validated on 256 boundary points, a
/// 16 x 16 interior grid and every quadrature node; CurveLeavesDomain is thrown
/// if an H coordinate reaches im <= 0.
double holomorphic_curve_integral(const DiskMap& curve, Signature sig, int nodes = 256);

}  // namespace otm
