#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "otm/error.hpp"
#include "otm/foliation.hpp"

using namespace otm;
using fixtures::cubic;
using fixtures::quartic;

namespace {

const Signature kCubic{1, 1};
const Signature kQuartic{2, 1};

}  // namespace

TEST(ZeroDirection, Examples) {
  const Point p{{{0, 1}, {2, 3}}};
  EXPECT_TRUE(zero_direction_test(p, Tangent{{0, {1, 1}}}, kCubic));
  EXPECT_FALSE(zero_direction_test(p, Tangent{{1, 0}}, kCubic));
  EXPECT_FALSE(zero_direction_test(p, Tangent{{{0, 1e-3}, 5}}, kCubic));
}

TEST(ZeroDirection, KernelIsTheComplexFactor) {
  std::mt19937_64 rng(31);
  for (Signature sig : {kCubic, kQuartic}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const Point p = sample_point(rng, sig);
      Tangent v = sample_tangent(rng, sig);
      const bool generic = trial % 2 == 0;
      if (!generic) {
        for (int i = 0; i < sig.s; ++i) v.v[i] = 0;
      }
      bool h_part_zero = true;
      for (int i = 0; i < sig.s; ++i) h_part_zero = h_part_zero && v.v[i] == 0.0;
      ASSERT_EQ(zero_direction_test(p, v, sig), h_part_zero) << trial;
    }
  }
}

TEST(FixedPoint, RealSolutionForScaledTranslation) {
  const auto& K = cubic();
  const auto gens = fixtures::cubic_generators();
  const auto cert = fixed_point(parse_word("u a", gens, K), K);
  EXPECT_EQ(cert.kind, CertificateKind::RealFixedPoint);
  ASSERT_EQ(cert.fixed_point.size(), 1U);
  // oracle: z = 1 / (1 - r) for the real root r
  const double r = fixtures::cubic_real_root();
  EXPECT_NEAR(cert.fixed_point[0], 1 / (1 - r), 1e-12);
  EXPECT_NEAR(cert.fixed_point[0], -3.0796, 1e-4);
  EXPECT_LT(cert.residual, 1e-9);
  EXPECT_EQ(cert.max_imag, 0.0);
  EXPECT_EQ(to_string(cert.kind), "real_fixed_point");
}

TEST(FixedPoint, PureTranslationHasNoSolution) {
  const auto& K = cubic();
  const auto cert = fixed_point(translation(K.generator()), K);
  EXPECT_EQ(cert.kind, CertificateKind::NoSolution);
  EXPECT_EQ(cert.slot, 0);
  ASSERT_EQ(cert.translation_values.size(), 1U);
  EXPECT_NEAR(cert.translation_values[0], fixtures::cubic_real_root(), 1e-12);
}

TEST(FixedPoint, PureScalingFixesTheOrigin) {
  const auto& K = cubic();
  const auto cert = fixed_point(make_element(make_unit(K.generator(), K), K.zero(), K), K);
  EXPECT_EQ(cert.kind, CertificateKind::RealFixedPoint);
  EXPECT_EQ(cert.fixed_point[0], 0.0);
}

TEST(FixedPoint, IdentityIsRejected) {
  const auto cert = fixed_point(identity_element(cubic()), cubic());
  EXPECT_EQ(cert.kind, CertificateKind::IdentityRejected);
}

TEST(FixedPoint, QuarticSolvesEachRealSlot) {
  const auto& K = quartic();
  const auto gens = fixtures::quartic_generators();
  const auto g = parse_word("u1 a1", gens, K);
  const auto cert = fixed_point(g, K);
  ASSERT_EQ(cert.kind, CertificateKind::RealFixedPoint);
  ASSERT_EQ(cert.fixed_point.size(), 2U);
  const auto su = embed(g.u.element, K.embeddings());
  const auto sa = embed(g.a, K.embeddings());
  for (int i = 0; i < 2; ++i) {
    const double z = cert.fixed_point[i];
    EXPECT_NEAR(su[i].real() * z + sa[i].real(), z, 1e-9 * (1 + std::fabs(z)));
  }
}

TEST(LeafSuite, CubicWordsUpToLengthThree) {
  const auto gens = fixtures::cubic_generators();
  const auto one = leaf_disjointness_suite(gens, cubic(), 1);
  EXPECT_EQ(one.words, 12);
  EXPECT_TRUE(one.passed());
  const auto three = leaf_disjointness_suite(gens, cubic(), 3);
  EXPECT_TRUE(three.passed());
  EXPECT_EQ(three.words, three.real_fixed_points + three.no_solution);
  EXPECT_GT(three.no_solution, 0);
  EXPECT_LT(three.max_residual, 1e-9);
}

TEST(LeafSuite, QuarticWords) {
  const auto report = leaf_disjointness_suite(fixtures::quartic_generators(), quartic(), 2);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.words, report.real_fixed_points + report.no_solution);
}

TEST(CurveIntegral, ConstantInHSlotsVanishes) {
  DiskMap curve{Point{{{0, 1}, {0, 0}}}, {{}, {1.0, {0, 2}}}};
  EXPECT_NEAR(holomorphic_curve_integral(curve, kCubic), 0.0, 1e-10);
}

TEST(CurveIntegral, LinearDiskMatchesStokesSurface) {
  const Point center{{{0, 2}, {0, 0}}};
  const DiskMap curve{center, {{0.3}, {}}};
  const double curve_value = holomorphic_curve_integral(curve, kCubic, 512);
  const double surface = stokes_residual(center, 0.3, 0, kCubic).surface_integral;
  EXPECT_NEAR(curve_value, surface, 1e-8);
  EXPECT_NEAR(curve_value, oracle::disk_integral_half_inverse_square(2.0, 0.3), 1e-6);
}

TEST(CurveIntegral, QuadraticDiskIsPositive) {
  const DiskMap curve{Point{{{0, 2}, {0, 0}}}, {{0, 0.3}, {}}};
  EXPECT_GT(holomorphic_curve_integral(curve, kCubic), 0.0);
}

TEST(CurveIntegral, RandomDisksAreNonNegative) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> c(-0.15, 0.15);
  for (int trial = 0; trial < 100; ++trial) {
    const Point center = sample_point(rng, kQuartic, SampleBox{1.0, 5.0, -3.0, 3.0});
    DiskMap curve{center, std::vector<CVector>(3)};
    for (auto& slot : curve.coefficients) {
      slot = {{c(rng), c(rng)}, {c(rng), c(rng)}};
    }
    EXPECT_GE(holomorphic_curve_integral(curve, kQuartic, 64), -1e-10) << trial;
  }
}

TEST(CurveIntegral, LeavingTheDomainThrows) {
  const DiskMap curve{Point{{{0, 0.5}, {0, 0}}}, {{{0, 1.0}}, {}}};
  try {
    holomorphic_curve_integral(curve, kCubic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CurveLeavesDomain);
  }
}
