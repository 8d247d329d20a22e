#include "otm/forms.hpp"

#include <cmath>
#include <numbers>

#include "otm/error.hpp"

namespace otm {

double log_phi(const Point& p, Signature sig) {
  double acc = 0;
  for (int i = 0; i < sig.s; ++i) acc -= std::log(p.z[i].imag());
  return acc;
}

double omega_closed(const Point& p, const Tangent& v, const Tangent& w, Signature sig) {
  double acc = 0;
  for (int i = 0; i < sig.s; ++i) {
    const double y = p.z[i].imag();
    acc -= std::imag(v.v[i] * std::conj(w.v[i])) / (2 * y * y);
  }
  return acc;
}

namespace {

using Wide = long double;

// log phi with every real coordinate exposed: x_i = coords[2i], y_i = coords[2i+1].
Wide log_phi_wide(const std::vector<Wide>& coords, int s) {
  Wide acc = 0;
  for (int i = 0; i < s; ++i) acc -= std::log(coords[2 * i + 1]);
  return acc;
}

// Real Hessian of log phi in the 2m real coordinates.
std::vector<std::vector<Wide>> real_hessian(const Point& p, Signature sig, Wide h) {
  const int n = 2 * sig.m();
  std::vector<Wide> base(n);
  for (int i = 0; i < sig.m(); ++i) {
    base[2 * i] = p.z[i].real();
    base[2 * i + 1] = p.z[i].imag();
  }
  auto f = [&](int a, Wide da, int b, Wide db) {
    std::vector<Wide> c = base;
    c[a] += da;
    c[b] += db;
    return log_phi_wide(c, sig.s);
  };
  std::vector<std::vector<Wide>> hess(n, std::vector<Wide>(n, 0));
  const Wide f0 = log_phi_wide(base, sig.s);
  for (int a = 0; a < n; ++a) {
    hess[a][a] = (f(a, h, a, 0) - 2 * f0 + f(a, -h, a, 0)) / (h * h);
    for (int b = a + 1; b < n; ++b) {
      const Wide v = (f(a, h, b, h) - f(a, h, b, -h) - f(a, -h, b, h) + f(a, -h, b, -h)) / (4 * h * h);
      hess[a][b] = v;
      hess[b][a] = v;
    }
  }
  return hess;
}

double omega_fd_raw(const Point& p, const Tangent& v, const Tangent& w, Signature sig, Wide h) {
  const auto hr = real_hessian(p, sig, h);
  const int m = sig.m();
  std::complex<Wide> acc = 0;
  const std::complex<Wide> I(0, 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Wide xx = hr[2 * i][2 * j], yy = hr[2 * i + 1][2 * j + 1];
      const Wide xy = hr[2 * i][2 * j + 1], yx = hr[2 * i + 1][2 * j];
      // d^2/dz_i dzbar_j = (1/4)(d_xi - i d_yi)(d_xj + i d_yj)
      const std::complex<Wide> hij(0.25L * (xx + yy), 0.25L * (xy - yx));
      const std::complex<Wide> vi(v.v[i]), wi(w.v[i]), vj(v.v[j]), wj(w.v[j]);
      acc += I * hij * (vi * std::conj(wj) - wi * std::conj(vj));
    }
  }
  return static_cast<double>(acc.real());
}

void check_step(const Point& p, Signature sig, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) {
    throw Error(ErrorCode::StepOutOfRange, "step " + std::to_string(h) + " outside [1e-7, 1e-3]");
  }
  for (int i = 0; i < sig.s; ++i) {
    if (p.z[i].imag() <= 2 * h) {
      throw Error(ErrorCode::StepOutOfRange, "point within 2h of the real axis in slot " +
                                                 std::to_string(i + 1));
    }
  }
}

}  // namespace

double omega_fd(const Point& p, const Tangent& v, const Tangent& w, Signature sig, double h) {
  check_step(p, sig, h);
  return omega_fd_raw(p, v, w, sig, h);
}

double omega_fd_extrapolated(const Point& p, const Tangent& v, const Tangent& w, Signature sig,
                             double h) {
  check_step(p, sig, h);
  const double coarse = omega_fd_raw(p, v, w, sig, h);
  const double fine = omega_fd_raw(p, v, w, sig, h / 2);
  return (4 * fine - coarse) / 3;
}

double dc_logphi(const Point& p, const Tangent& v, Signature sig) {
  double acc = 0;
  for (int i = 0; i < sig.s; ++i) acc += v.v[i].real() / p.z[i].imag();
  return acc;
}

Tangent complex_structure(const Tangent& v) {
  Tangent out = v;
  for (auto& c : out.v) c *= std::complex<double>(0, 1);
  return out;
}

InvarianceResidual invariance_residual(const GroupElement& g, const Point& p, const Tangent& v,
                                       const Tangent& w, const NumberField& field) {
  const Signature sig = field.signature();
  const Point gp = act(g, p, field);
  const Tangent gv = differential(g, v, field);
  const Tangent gw = differential(g, w, field);
  return {std::fabs(omega_closed(gp, gv, gw, sig) - omega_closed(p, v, w, sig)),
          std::fabs(dc_logphi(gp, gv, sig) - dc_logphi(p, v, sig))};
}

double semipositivity_check(const Point& p, const Tangent& v, Signature sig) {
  return omega_closed(p, v, complex_structure(v), sig);
}

StokesReport stokes_residual(const Point& p0, double radius, int slot, Signature sig,
                             int surface_nodes, int boundary_nodes) {
  if (slot < 0 || slot >= sig.m()) {
    throw Error(ErrorCode::DiskLeavesDomain, "slot " + std::to_string(slot) + " out of range");
  }
  if (slot < sig.s && p0.z[slot].imag() - radius <= 0.05) {
    throw Error(ErrorCode::DiskLeavesDomain, "disk comes within 0.05 of the real axis");
  }
  const double two_pi = 2 * std::numbers::pi;
  Tangent ex{CVector(sig.m())}, ey{CVector(sig.m())};
  ex.v[slot] = 1.0;
  ey.v[slot] = std::complex<double>(0, 1);

  StokesReport rep;
  rep.surface_nodes = surface_nodes;
  rep.boundary_nodes = boundary_nodes;

  const double dr = radius / surface_nodes;
  const double dtheta_s = two_pi / surface_nodes;
  CompensatedSum surface;
  Point q = p0;
  for (int k = 0; k < surface_nodes; ++k) {
    const double rho = (k + 0.5) * dr;
    CompensatedSum ring;
    for (int j = 0; j < surface_nodes; ++j) {
      const double theta = (j + 0.5) * dtheta_s;
      q.z[slot] = p0.z[slot] + std::polar(rho, theta);
      ring.add(omega_closed(q, ex, ey, sig));
    }
    surface.add(ring.value() * rho * dr * dtheta_s);
  }
  rep.surface_integral = surface.value();

  const double dtheta_b = two_pi / boundary_nodes;
  CompensatedSum boundary;
  for (int j = 0; j < boundary_nodes; ++j) {
    const double theta = (j + 0.5) * dtheta_b;
    q.z[slot] = p0.z[slot] + std::polar(radius, theta);
    Tangent along{CVector(sig.m())};
    along.v[slot] = std::complex<double>(0, 1) * std::polar(radius, theta);
    boundary.add(0.5 * dc_logphi(q, along, sig) * dtheta_b);
  }
  rep.boundary_integral = boundary.value();
  rep.residual = std::fabs(rep.surface_integral - rep.boundary_integral);
  return rep;
}

}  // namespace otm
