#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "otm/error.hpp"
#include "otm/forms.hpp"

using namespace otm;
using fixtures::cubic;
using fixtures::quartic;

namespace {

const Signature kCubic{1, 1};
const Signature kQuartic{2, 1};

Tangent tangent(std::initializer_list<std::complex<double>> v) { return Tangent{CVector(v)}; }

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST(LogPhi, Examples) {
  EXPECT_EQ(log_phi(Point{{{0, 1}, {5, -3}}}, kCubic), 0.0);
  EXPECT_NEAR(log_phi(Point{{{0, 2}, {0, 0}}}, kCubic), -std::log(2.0), 1e-15);
  EXPECT_NEAR(log_phi(Point{{{1, 2}, {-1, 0.5}, {0, 0}}}, kQuartic), -std::log(1.0), 1e-15);
}

TEST(OmegaClosed, Examples) {
  const Point i{{{0, 1}, {0, 0}}};
  EXPECT_DOUBLE_EQ(omega_closed(i, tangent({1, 0}), tangent({{0, 1}, 0}), kCubic), 0.5);
  EXPECT_DOUBLE_EQ(omega_closed(i, tangent({{0, 1}, 0}), tangent({1, 0}), kCubic), -0.5);
  const auto v = tangent({{0.3, -0.7}, {2, 1}});
  EXPECT_EQ(omega_closed(i, v, v, kCubic), 0.0);
  // C^t directions do not contribute
  EXPECT_EQ(omega_closed(i, tangent({0, 1}), tangent({0, {0, 1}}), kCubic), 0.0);
  // scales like 1 / y^2
  const Point two_i{{{0, 2}, {0, 0}}};
  EXPECT_DOUBLE_EQ(omega_closed(two_i, tangent({1, 0}), tangent({{0, 1}, 0}), kCubic), 0.125);
}

TEST(OmegaFd, AgreesWithClosedFormOnSamples) {
  std::mt19937_64 rng(2024);
  for (Signature sig : {kCubic, kQuartic}) {
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Point p = sample_point(rng, sig);
      const Tangent v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
      const double closed = omega_closed(p, v, w, sig);
      const double fd = omega_fd(p, v, w, sig);
      worst = std::max(worst, std::fabs(fd - closed) / (1 + std::fabs(closed)));
    }
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(OmegaFd, ExtrapolationAndAlternation) {
  const Point p{{{0.4, 0.7}, {1.5, 2}, {0.3, -0.2}}};
  const auto v = tangent({{1, 0.5}, {-0.2, 1}, {3, 3}});
  const auto w = tangent({{0.1, -1}, {0.7, 0.4}, {-1, 2}});
  const double closed = omega_closed(p, v, w, kQuartic);
  EXPECT_NEAR(omega_fd_extrapolated(p, v, w, kQuartic), closed, 1e-7);
  EXPECT_NEAR(omega_fd(p, v, w, kQuartic), -omega_fd(p, w, v, kQuartic), 1e-12);
  // mixed H slots have no cross term in log phi
  EXPECT_NEAR(omega_fd(p, tangent({1, 0, 0}), tangent({0, {0, 1}, 0}), kQuartic), 0.0, 1e-7);
}

TEST(OmegaFd, StepValidation) {
  const Point p{{{0, 1}, {0, 0}}};
  const auto v = tangent({1, 0});
  EXPECT_EQ(error_of([&] { omega_fd(p, v, v, kCubic, 1e-8); }), ErrorCode::StepOutOfRange);
  EXPECT_EQ(error_of([&] { omega_fd(p, v, v, kCubic, 1e-2); }), ErrorCode::StepOutOfRange);
  const Point low{{{0, 1e-4}, {0, 0}}};
  EXPECT_EQ(error_of([&] { omega_fd(low, v, v, kCubic, 1e-4); }), ErrorCode::StepOutOfRange);
}

TEST(DcLogPhi, Examples) {
  const Point i{{{0, 1}, {0, 0}}};
  EXPECT_DOUBLE_EQ(dc_logphi(i, tangent({1, 0}), kCubic), 1.0);
  EXPECT_DOUBLE_EQ(dc_logphi(i, tangent({{0, 1}, 0}), kCubic), 0.0);
  EXPECT_DOUBLE_EQ(dc_logphi(i, tangent({0, 1}), kCubic), 0.0);
}

TEST(DcLogPhi, MatchesMinusDfOfIv) {
  // finite-difference oracle for -d(log phi)(I v)
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p = sample_point(rng, kQuartic);
    const Tangent v = sample_tangent(rng, kQuartic);
    const Tangent iv = complex_structure(v);
    const double h = 1e-6;
    Point plus = p, minus = p;
    for (std::size_t k = 0; k < p.z.size(); ++k) {
      plus.z[k] += h * iv.v[k];
      minus.z[k] -= h * iv.v[k];
    }
    const double df = (log_phi(plus, kQuartic) - log_phi(minus, kQuartic)) / (2 * h);
    EXPECT_NEAR(dc_logphi(p, v, kQuartic), -df, 1e-6 * (1 + std::fabs(df)));
  }
}

TEST(Invariance, Examples) {
  const auto& K = cubic();
  const Point p{{{0.5, 1.5}, {-1, 2}}};
  const auto v = tangent({{1, -0.5}, {0.2, 0.3}});
  const auto w = tangent({{-0.4, 0.9}, {1, 0}});
  const auto gens = fixtures::cubic_generators();
  for (const char* word : {"a", "u a", "u^-1 a2", "-a1 u"}) {
    const auto r = invariance_residual(parse_word(word, gens, K), p, v, w, K);
    EXPECT_LT(r.omega, 1e-9) << word;
    EXPECT_LT(r.dc, 1e-9) << word;
  }
  const auto r = invariance_residual(identity_element(K), p, v, w, K);
  EXPECT_EQ(r.omega, 0.0);
  EXPECT_EQ(r.dc, 0.0);
}

TEST(Invariance, RandomWords) {
  for (const NumberField* K : {&cubic(), &quartic()}) {
    const auto gens = K == &cubic() ? fixtures::cubic_generators() : fixtures::quartic_generators();
    const auto alphabet = affine_alphabet(gens, *K);
    std::mt19937_64 rng(99);
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const auto g = random_word(rng, alphabet, 3).element;
      const Point p = sample_point(rng, K->signature());
      const Tangent v = sample_tangent(rng, K->signature()), w = sample_tangent(rng, K->signature());
      const auto r = invariance_residual(g, p, v, w, *K);
      worst = std::max({worst, r.omega, r.dc});
    }
    EXPECT_LT(worst, 1e-9);
  }
}

TEST(FormProperties, SemipositivityBilinearityJInvariance) {
  std::mt19937_64 rng(17);
  for (Signature sig : {kCubic, kQuartic}) {
    double min_value = 1;
    for (int trial = 0; trial < 10000; ++trial) {
      const Point p = sample_point(rng, sig);
      const Tangent v = sample_tangent(rng, sig);
      const double s = semipositivity_check(p, v, sig);
      min_value = std::min(min_value, s);
      if (trial % 10 == 0) {
        EXPECT_NEAR(s, omega_closed(p, v, complex_structure(v), sig), 1e-12 * (1 + s));
      }
    }
    EXPECT_GE(min_value, -1e-12);

    std::uniform_real_distribution<double> coeff(-2, 2);
    for (int trial = 0; trial < 200; ++trial) {
      const Point p = sample_point(rng, sig);
      const Tangent u = sample_tangent(rng, sig), v = sample_tangent(rng, sig), w = sample_tangent(rng, sig);
      const double a = coeff(rng), b = coeff(rng);
      Tangent mix{CVector(u.v.size())};
      for (std::size_t k = 0; k < u.v.size(); ++k) mix.v[k] = a * u.v[k] + b * v.v[k];
      const double lhs = omega_closed(p, mix, w, sig);
      const double rhs = a * omega_closed(p, u, w, sig) + b * omega_closed(p, v, w, sig);
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::fabs(lhs)));
      EXPECT_NEAR(omega_closed(p, v, w, sig), -omega_closed(p, w, v, sig), 1e-15);
      EXPECT_NEAR(omega_closed(p, complex_structure(v), complex_structure(w), sig),
                  omega_closed(p, v, w, sig), 1e-12);
    }
  }
}

TEST(Stokes, ResidualAtReferenceDisk) {
  const Point p0{{{0, 2}, {0, 0}}};
  const auto rep = stokes_residual(p0, 0.3, 0, kCubic);
  EXPECT_LT(rep.residual, 1e-4);
  EXPECT_EQ(rep.surface_nodes, 512);
  // analytic value of (1/2) integral of dA / y^2 over the disk
  const double exact = oracle::disk_integral_half_inverse_square(2.0, 0.3);
  EXPECT_NEAR(rep.surface_integral, exact, 1e-6);
  EXPECT_NEAR(rep.boundary_integral, exact, 1e-10);
}

TEST(Stokes, SecondOrderConvergence) {
  const Point p0{{{0.5, 1.0}, {0, 0}}};
  const double r16 = stokes_residual(p0, 0.5, 0, kCubic, 16, 512).residual;
  const double r32 = stokes_residual(p0, 0.5, 0, kCubic, 32, 512).residual;
  const double r64 = stokes_residual(p0, 0.5, 0, kCubic, 64, 512).residual;
  EXPECT_NEAR(r16 / r32, 4.0, 0.4);
  EXPECT_NEAR(r32 / r64, 4.0, 0.4);
}

TEST(Stokes, ScalingAndComplexSlot) {
  const Point p0{{{0, 2}, {0, 0}}};
  const double big = stokes_residual(p0, 0.2, 0, kCubic).surface_integral;
  const double small = stokes_residual(p0, 0.1, 0, kCubic).surface_integral;
  EXPECT_NEAR(big / small, 4.0, 0.2);
  // omega restricted to the C^t slot vanishes, and so does the boundary term
  const auto rep = stokes_residual(p0, 0.5, 1, kCubic);
  EXPECT_EQ(rep.surface_integral, 0.0);
  EXPECT_EQ(rep.boundary_integral, 0.0);
}

TEST(Stokes, ExactDifferentialIsTwiceOmega) {
  // integral of d(d^c log phi) over the disk equals 2 * integral of omega
  const Point p0{{{0, 1.5}, {0, 0}}};
  const auto rep = stokes_residual(p0, 0.4, 0, kCubic);
  EXPECT_NEAR(2 * rep.boundary_integral, 2 * oracle::disk_integral_half_inverse_square(1.5, 0.4), 1e-9);
}

TEST(Stokes, Errors) {
  const Point p0{{{0, 0.3}, {0, 0}}};
  EXPECT_EQ(error_of([&] { stokes_residual(p0, 0.26, 0, kCubic); }), ErrorCode::DiskLeavesDomain);
  EXPECT_EQ(error_of([&] { stokes_residual(p0, 0.1, 2, kCubic); }), ErrorCode::DiskLeavesDomain);
  EXPECT_EQ(error_of([&] { stokes_residual(p0, 0.1, -1, kCubic); }), ErrorCode::DiskLeavesDomain);
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}
