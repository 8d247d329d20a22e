#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otm/precision.hpp"

namespace otm {

/// Dense integer polynomial, coefficients in ascending degree. Trailing
/// zeros are trimmed by every routine in `poly`, so `empty()` means zero.
using IntCoeffs = std::vector<BigInt>;

namespace poly {

void trim(IntCoeffs& p);
int degree(const IntCoeffs& p);  // -1 for the zero polynomial
BigInt evaluate(const IntCoeffs& p, const BigInt& x);
IntCoeffs derivative(const IntCoeffs& p);
IntCoeffs multiply(const IntCoeffs& a, const IntCoeffs& b);

/// Quotient of `num` by a monic `den` when the division is exact over Z.
std::optional<IntCoeffs> divide_exact_monic(const IntCoeffs& num, const IntCoeffs& den);

/// Remainder of `num` modulo a monic `den`.
IntCoeffs reduce_monic(IntCoeffs num, const IntCoeffs& den);

/// Res(a, b) by the subresultant pseudo-remainder sequence. Exact.
BigInt resultant(IntCoeffs a, IntCoeffs b);

/// Number of distinct real roots, from a Sturm sequence over Q.
int count_real_roots(const IntCoeffs& f);

std::string format(const IntCoeffs& p, char var = 'x');

}  // namespace poly

/// Monic irreducible integer polynomial of degree >= 3 defining K = Q[x]/(f).
class IntPolynomial {
 public:
  const IntCoeffs& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  std::string to_string() const { return poly::format(coeffs_); }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  friend IntPolynomial validate_polynomial(std::span<const BigInt>, bool);
  explicit IntPolynomial(IntCoeffs c) : coeffs_(std::move(c)) {}
  IntCoeffs coeffs_;
};

/// Checks monicity, degree and irreducibility.
///
/// Irreducibility is settled by the rational root test followed by an
/// exhaustive search for monic integer factors of degree 2..n/2. Factor
/// coefficients are bounded both by 2^n (1 + |f|_2) and by the elementary
/// symmetric bound C(k, j) R^j with R the Fujiwara root bound; the box is the
/// intersection of the two. Degrees above 8 are only accepted when
/// `assume_irreducible` is set.
///
/// Throws Error with NotMonic, DegreeTooSmall, Reducible (detail names the
/// factor) or IrreducibilityUndecided.
IntPolynomial validate_polynomial(std::span<const BigInt> coeffs, bool assume_irreducible = false);

inline IntPolynomial validate_polynomial(std::initializer_list<long long> coeffs,
                                         bool assume_irreducible = false) {
  IntCoeffs c(coeffs.begin(), coeffs.end());
  return validate_polynomial(std::span<const BigInt>(c), assume_irreducible);
}

}  // namespace otm
