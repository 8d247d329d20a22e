#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "otm/error.hpp"
#include "otm/group.hpp"

using namespace otm;
using fixtures::cubic;
using fixtures::quartic;

namespace {

double distance(const Point& a, const Point& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.z.size(); ++i) d = std::max(d, std::abs(a.z[i] - b.z[i]));
  return d;
}

GroupElement element(const NumberField& K, std::initializer_list<long long> u,
                     std::initializer_list<long long> a) {
  return make_element(make_unit(K.element(u), K), K.element(a), K);
}

}  // namespace

TEST(Compose, Examples) {
  const auto& K = cubic();
  const auto a = K.element({2, -1, 3}), b = K.element({0, 4, 1});
  const auto ab = compose(translation(a), translation(b));
  EXPECT_TRUE(ab.u.element.is_one());
  EXPECT_EQ(ab.a, a + b);

  const auto u = make_unit(K.generator(), K);
  const auto ub = compose(make_element(u, K.zero(), K), translation(b));
  EXPECT_EQ(ub.u.element, u.element);
  EXPECT_EQ(ub.a, u.element * b);

  const auto g = compose(element(K, {0, 1}, {1}), element(K, {0, 1}, {0, 1}));
  EXPECT_EQ(g.u.element.coeffs(), (IntCoeffs{0, 0, 1}));
  EXPECT_EQ(g.a.coeffs(), (IntCoeffs{1, 0, 1}));

  // oracle: two affine maps applied in sequence on random points
  std::mt19937_64 rng(5);
  const auto g1 = element(K, {0, 1}, {1}), g2 = element(K, {0, 1}, {0, 1});
  for (int i = 0; i < 20; ++i) {
    const Point z = sample_point(rng, K.signature());
    EXPECT_LT(distance(act(g, z, K), act(g1, act(g2, z, K), K)), 1e-9);
  }
}

TEST(Inverse, Examples) {
  const auto& K = cubic();
  const auto a = K.element({3, 0, -2});
  EXPECT_EQ(inverse(translation(a)), translation(-a));
  const auto u = make_unit(K.generator(), K);
  const auto scaled = inverse(make_element(u, K.zero(), K));
  EXPECT_EQ(scaled.u.element, inverse(u.element));
  EXPECT_TRUE(scaled.a.is_zero());

  const auto g = element(K, {0, 1}, {1});
  const auto inv = inverse(g);
  EXPECT_EQ(inv.u.element.coeffs(), (IntCoeffs{-1, 0, 1}));
  EXPECT_EQ(inv.a.coeffs(), (IntCoeffs{1, 0, -1}));
  EXPECT_TRUE(is_identity(compose(g, inv)));
  EXPECT_TRUE(is_identity(compose(inv, g)));
}

TEST(Act, Examples) {
  const auto& K = cubic();
  const Signature sig = K.signature();
  const Point z{{{0.3, 2.0}, {-1.0, 4.0}}};
  EXPECT_EQ(distance(act(identity_element(K), z, K), z), 0.0);

  const Point i{{{0.0, 1.0}, {0.0, 0.0}}};
  const auto shifted = act(translation(K.one()), i, K);
  EXPECT_EQ(shifted.z[0], std::complex<double>(1.0, 1.0));

  const auto scaled = act(element(K, {0, 1}, {0}), i, K);
  EXPECT_NEAR(scaled.z[0].imag(), fixtures::cubic_real_root(), 1e-9);
  EXPECT_NEAR(scaled.z[0].real(), 0.0, 1e-15);
  EXPECT_EQ(scaled.z[1], std::complex<double>(0.0, 0.0));
  EXPECT_TRUE(in_domain(scaled, sig));
}

TEST(Act, RejectsNonPositiveUnits) {
  const auto& K = cubic();
  try {
    make_element(make_unit(-K.generator(), K), K.zero(), K);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTotallyPositive);
  }
  // bypassing the check makes act notice the half-plane violation
  const GroupElement bad{make_unit(-K.generator(), K), K.zero()};
  try {
    act(bad, Point{{{0.0, 1.0}, {0.0, 0.0}}}, K);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LeftHalfSpace);
  }
}

TEST(Differential, Examples) {
  const auto& K = cubic();
  const Tangent v{{{1.0, -2.0}, {0.5, 0.25}}};
  const auto dv = differential(translation(K.element({4, 1})), v, K);
  EXPECT_EQ(dv.v, v.v);

  const Tangent e1{{{1.0, 0.0}, {0.0, 0.0}}};
  const auto de = differential(element(K, {0, 1}, {0}), e1, K);
  EXPECT_NEAR(de.v[0].real(), fixtures::cubic_real_root(), 1e-12);
  EXPECT_EQ(de.v[1], std::complex<double>(0.0, 0.0));
}

TEST(SamplePoint, DeterministicAndInBox) {
  const Signature sig = quartic().signature();
  const Point a = sample_point(0, sig), b = sample_point(0, sig);
  EXPECT_EQ(a.z, b.z);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Point p = sample_point(rng, sig);
    ASSERT_TRUE(in_domain(p, sig));
    for (int k = 0; k < sig.s; ++k) EXPECT_GE(p.z[k].imag(), 0.1);
  }
}

TEST(Words, ParseNotation) {
  const auto& K = cubic();
  const auto gens = fixtures::cubic_generators();
  const auto g = parse_word("u a", gens, K);
  EXPECT_EQ(g, element(K, {0, 1}, {1}));
  EXPECT_EQ(parse_word("u1 a0", gens, K), g);
  EXPECT_EQ(parse_word("a u", gens, K), element(K, {0, 1}, {0, 1}));
  EXPECT_TRUE(is_identity(parse_word("u u^-1 a2 -a2", gens, K)));
  EXPECT_EQ(parse_word("a1^-1", gens, K), translation(-K.generator()));
  for (const char* bad : {"", "x", "u2", "a3", "-u", "u1x"}) {
    try {
      parse_word(bad, gens, K);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidWord) << bad;
    }
  }
}

TEST(Words, AlphabetAndEnumeration) {
  const auto& K = cubic();
  const auto gens = fixtures::cubic_generators();
  const auto alphabet = affine_alphabet(gens, K);
  ASSERT_EQ(alphabet.size(), 12U);
  for (const auto& l : alphabet) EXPECT_EQ(parse_word(l.text, gens, K), l.element) << l.text;

  const auto one = enumerate_words(alphabet, 1);
  EXPECT_EQ(one.size(), 12U);
  const auto three = enumerate_words(alphabet, 3);
  for (const auto& w : three) {
    EXPECT_FALSE(is_identity(w.element));
    EXPECT_EQ(parse_word(w.text, gens, K), w.element) << w.text;
  }
}

TEST(GroupLaw, HomomorphismAssociativityAndInverses) {
  for (const NumberField* K : {&cubic(), &quartic()}) {
    const auto gens = K == &cubic() ? fixtures::cubic_generators() : fixtures::quartic_generators();
    const auto alphabet = affine_alphabet(gens, *K);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
      const auto g1 = random_word(rng, alphabet, 3).element;
      const auto g2 = random_word(rng, alphabet, 3).element;
      const auto g3 = random_word(rng, alphabet, 3).element;
      const Point z = sample_point(rng, K->signature());
      const Point lhs = act(compose(g1, g2), z, *K);
      const Point rhs = act(g1, act(g2, z, *K), *K);
      EXPECT_LT(distance(lhs, rhs), 1e-9);
      EXPECT_TRUE(in_domain(lhs, K->signature()));
      EXPECT_EQ(compose(compose(g1, g2), g3), compose(g1, compose(g2, g3)));
      EXPECT_TRUE(is_identity(compose(g1, inverse(g1))));

      const Tangent v = sample_tangent(rng, K->signature());
      const auto chained = differential(g1, differential(g2, v, *K), *K);
      const auto direct = differential(compose(g1, g2), v, *K);
      for (std::size_t i = 0; i < v.v.size(); ++i) EXPECT_LT(std::abs(chained.v[i] - direct.v[i]), 1e-10);
    }
  }
}
