#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "otm/error.hpp"
#include "otm/polynomial.hpp"

using namespace otm;

namespace {

ErrorCode validation_error(std::initializer_list<long long> c, bool assume = false) {
  try {
    validate_polynomial(c, assume);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected validation to fail";
  return ErrorCode::InvalidConfig;
}

IntCoeffs to_coeffs(const std::vector<long long>& v) { return IntCoeffs(v.begin(), v.end()); }

}  // namespace

TEST(ValidatePolynomial, AcceptsIrreducibleCubic) {
  // x^3 - x - 1: f(1) = -1, f(-1) = -1, so no rational root and hence irreducible.
  EXPECT_EQ(oracle::horner({-1, -1, 0, 1}, 1.0), -1.0);
  EXPECT_EQ(oracle::horner({-1, -1, 0, 1}, -1.0), -1.0);
  const auto f = validate_polynomial({-1, -1, 0, 1});
  EXPECT_EQ(f.degree(), 3);
  EXPECT_EQ(f.to_string(), "x^3 - x - 1");
}

TEST(ValidatePolynomial, RejectsRationalRoot) {
  try {
    validate_polynomial({0, -1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Reducible);
    EXPECT_NE(std::string(e.what()).find(": x"), std::string::npos);
  }
  EXPECT_EQ(validation_error({-2, 1, -2, 1}), ErrorCode::Reducible);  // (x - 2)(x^2 + 1)
}

TEST(ValidatePolynomial, QuarticMatchesBruteForceFactorSearch) {
  const std::vector<long long> f{-1, -1, 0, 0, 1};
  ASSERT_FALSE(oracle::has_monic_quadratic_factor(f, 40));
  EXPECT_NO_THROW(validate_polynomial({-1, -1, 0, 0, 1}));

  // (x^2 + x + 2)(x^2 - 3x + 5) has no rational root but splits into quadratics.
  const std::vector<long long> g{10, -1, 4, -2, 1};
  ASSERT_TRUE(oracle::has_monic_quadratic_factor(g, 10));
  try {
    validate_polynomial({10, -1, 4, -2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Reducible);
  }
}

TEST(ValidatePolynomial, FindsCubicFactorOfSextic) {
  // (x^3 - x - 1)(x^3 + 2x + 3)
  EXPECT_EQ(validation_error({-3, -5, -2, 2, 1, 0, 1}), ErrorCode::Reducible);
}

TEST(ValidatePolynomial, InputErrors) {
  EXPECT_EQ(validation_error({}), ErrorCode::NotMonic);
  EXPECT_EQ(validation_error({1, 0, 0, 2}), ErrorCode::NotMonic);
  EXPECT_EQ(validation_error({-1, 1, 0}), ErrorCode::NotMonic);
  EXPECT_EQ(validation_error({-2, 0, 1}), ErrorCode::DegreeTooSmall);
  // degree 9 needs the explicit flag
  EXPECT_EQ(validation_error({-1, -1, 0, 0, 0, 0, 0, 0, 0, 1}), ErrorCode::IrreducibilityUndecided);
  EXPECT_NO_THROW(validate_polynomial({-1, -1, 0, 0, 0, 0, 0, 0, 0, 1}, true));
  // the rational root test still runs behind the flag
  EXPECT_EQ(validation_error({0, 1, 0, 0, 0, 0, 0, 0, 0, 1}, true), ErrorCode::Reducible);
}

TEST(ValidatePolynomial, DegreeEightSearchCompletes) {
  EXPECT_NO_THROW(validate_polynomial({-1, -1, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(Resultant, AgreesWithMultiplicationMatrixDeterminant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coeff(-9, 9);
  const std::vector<std::vector<long long>> fields{{-1, -1, 0, 1}, {-1, -1, 0, 0, 1}, {-5, -2, 0, 1}};
  for (const auto& f : fields) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<long long> x(f.size() - 1);
      for (auto& c : x) c = coeff(rng);
      const BigInt expected = oracle::norm_by_matrix(f, x);
      EXPECT_EQ(poly::resultant(to_coeffs(f), to_coeffs(x)), expected) << "trial " << trial;
    }
  }
}

TEST(Resultant, SmallCases) {
  const IntCoeffs f = to_coeffs({-1, -1, 0, 1});
  EXPECT_EQ(poly::resultant(f, to_coeffs({2})), 8);
  EXPECT_EQ(poly::resultant(f, to_coeffs({0, 1})), 1);
  EXPECT_EQ(poly::resultant(f, to_coeffs({1, 1})), 1);
  EXPECT_EQ(poly::resultant(f, {}), 0);
  // common factor
  EXPECT_EQ(poly::resultant(to_coeffs({-1, 0, 1}), to_coeffs({1, 1})), 0);
}

TEST(SturmCount, MatchesSignChanges) {
  EXPECT_EQ(poly::count_real_roots(to_coeffs({-1, -1, 0, 1})), 1);
  EXPECT_EQ(oracle::integer_sign_changes({-1, -1, 0, 0, 1}, -1, 2), 2);
  EXPECT_EQ(poly::count_real_roots(to_coeffs({-1, -1, 0, 0, 1})), 2);
  EXPECT_EQ(poly::count_real_roots(to_coeffs({-5, -2, 0, 1})), 1);
  EXPECT_EQ(oracle::integer_sign_changes({1, -10, 0, 1}, -4, 4), 3);
  EXPECT_EQ(poly::count_real_roots(to_coeffs({1, -10, 0, 1})), 3);
  EXPECT_EQ(poly::count_real_roots(to_coeffs({1, 0, 0, 0, 1})), 0);
}
