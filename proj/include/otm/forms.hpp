#pragma once

#include <cmath>

#include "otm/group.hpp"

namespace otm {

/// log phi(z) = -sum_{i <= s} ln(im z_i).
double log_phi(const Point& p, Signature sig);

/// The (1,1)-form sqrt(-1) sum_{i<=s} dz_i ^ dzbar_i / (4 (im z_i)^2) on a
/// pair of real tangent vectors:  -sum Im(v_i conj(w_i)) / (2 (im z_i)^2).
double omega_closed(const Point& p, const Tangent& v, const Tangent& w, Signature sig);

inline constexpr double kDefaultFdStep = 1e-5;

/// Independent evaluation of sqrt(-1) d dbar log phi: the complex Hessian
/// d^2 log phi / dz_i dzbar_j is assembled from central differences of log phi
/// in the real coordinates (extended precision, absolute step h) and paired with
/// (v, w) as sum_{ij} Re(i H_ij (v_i conj w_j - w_i conj v_j)).
/// Throws StepOutOfRange unless 1e-7 <= h <= 1e-3 and every H coordinate
/// has im z_i > 2h.
double omega_fd(const Point& p, const Tangent& v, const Tangent& w, Signature sig,
                double h = kDefaultFdStep);

/// Richardson combination (4 F(h/2) - F(h)) / 3 of omega_fd.
double omega_fd_extrapolated(const Point& p, const Tangent& v, const Tangent& w, Signature sig,
                             double h = kDefaultFdStep);

/// d^c log phi (v) with d^c f (v) = -df(Iv):  sum_{i<=s} Re(v_i) / im z_i.
double dc_logphi(const Point& p, const Tangent& v, Signature sig);

/// I v, multiplication of every coordinate by sqrt(-1).
Tangent complex_structure(const Tangent& v);

struct InvarianceResidual {
  double omega = 0;
  double dc = 0;
};

/// |omega(g p; dg v, dg w) - omega(p; v, w)| and the same for d^c log phi on v.
InvarianceResidual invariance_residual(const GroupElement& g, const Point& p, const Tangent& v,
                                       const Tangent& w, const NumberField& field);

/// omega(v, Iv) = sum_{i<=s} |v_i|^2 / (2 (im z_i)^2).
double semipositivity_check(const Point& p, const Tangent& v, Signature sig);

struct StokesReport {
  double surface_integral = 0;
  double boundary_integral = 0;
  double residual = 0;
  int surface_nodes = 0;   // per polar direction; N^2 cells in total
  int boundary_nodes = 0;
};

/// Compares the integral of omega over the disk {p0 + r e^{i theta} in slot}
/// (polar midpoint rule, N_surf x N_surf cells) with the integral of
/// (1/2) d^c log phi over its boundary circle (midpoint rule, N_bdry nodes).
/// `slot` is zero based. For an H slot the disk must satisfy
/// im(z_slot) - r > 0.05, otherwise DiskLeavesDomain is thrown.
StokesReport stokes_residual(const Point& p0, double radius, int slot, Signature sig,
                             int surface_nodes = 512, int boundary_nodes = 512);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

}  // namespace otm
