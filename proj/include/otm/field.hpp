#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "otm/polynomial.hpp"
#include "otm/precision.hpp"

namespace otm {

/// Number of real embeddings s and conjugate pairs t; degree = s + 2t and
/// the OT space H^s x C^t has m = s + t complex coordinates.
struct Signature {
  int s = 0;
  int t = 0;
  int degree() const { return s + 2 * t; }
  int m() const { return s + t; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Roots of f in embedding order: real roots ascending, then the t roots with
/// positive imaginary part sorted by (re, im), then their conjugates in the
/// same order. Conjugates are stored as exact mirrors.
struct EmbeddingSet {
  Signature signature;
  unsigned precision_bits = 0;
  int tolerance_digits = 0;  // root tolerance is 10^-tolerance_digits
  std::vector<MpComplex> roots;
  std::vector<std::complex<double>> roots_double;

  Real tolerance() const;
};

/// Root tolerance used when none is given: 10^-floor(0.8 * decimal digits),
/// i.e. 1e-30 at 128 bits.
int default_tolerance_digits(unsigned precision_bits);

/// Durand-Kerner simultaneous iteration, then per-root Newton refinement
/// until |f/f'| < 10^-tolerance_digits. The real-root count is taken from a
/// Sturm sequence and must agree with the numerical classification.
EmbeddingSet compute_embeddings(const IntPolynomial& f, unsigned precision_bits,
                                int tolerance_digits);
EmbeddingSet compute_embeddings(const IntPolynomial& f, unsigned precision_bits = 128);

/// Element c_0 + c_1 a + ... + c_{n-1} a^{n-1} of the order Z[a], a a root of
/// the defining polynomial. Arithmetic is exact.
class AlgebraicInt {
 public:
  AlgebraicInt(std::shared_ptr<const IntPolynomial> modulus, IntCoeffs coeffs);

  const IntCoeffs& coeffs() const { return coeffs_; }
  const IntPolynomial& modulus() const { return *modulus_; }
  const std::shared_ptr<const IntPolynomial>& modulus_ptr() const { return modulus_; }
  int degree() const { return modulus_->degree(); }

  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const { return poly::format(coeffs_, 'a'); }

  friend AlgebraicInt operator+(const AlgebraicInt& a, const AlgebraicInt& b);
  friend AlgebraicInt operator-(const AlgebraicInt& a, const AlgebraicInt& b);
  friend AlgebraicInt operator-(const AlgebraicInt& a);
  friend AlgebraicInt operator*(const AlgebraicInt& a, const AlgebraicInt& b);
  friend bool operator==(const AlgebraicInt& a, const AlgebraicInt& b);

 private:
  std::shared_ptr<const IntPolynomial> modulus_;
  IntCoeffs coeffs_;  // always length n
};

inline AlgebraicInt add(const AlgebraicInt& a, const AlgebraicInt& b) { return a + b; }
inline AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b) { return a * b; }
AlgebraicInt pow(const AlgebraicInt& a, unsigned e);

/// Multiplicative inverse inside Z[a], via the extended Euclidean algorithm
/// over Q modulo f. Throws InverseNotInOrder when the inverse has a
/// non-integral coefficient (a is not a unit of Z[a]).
AlgebraicInt inverse(const AlgebraicInt& a);

/// N(a) = Res(f, a(x)), exact.
BigInt norm_resultant(const AlgebraicInt& a);

/// N(a) checked against the rounded product of the embeddings of a. Throws
/// CrossCheckMismatch when the two differ by 0.5 or more.
BigInt norm_exact(const AlgebraicInt& a, const EmbeddingSet& emb);

std::vector<MpComplex> embed_precise(const AlgebraicInt& a, const EmbeddingSet& emb);

/// sigma_1(a), ..., sigma_{s+2t}(a) rounded to double. The first s entries are real.
std::vector<std::complex<double>> embed(const AlgebraicInt& a, const EmbeddingSet& emb);

/// Defining polynomial together with its embeddings at a working precision.
class NumberField {
 public:
  explicit NumberField(IntPolynomial f, unsigned precision_bits = 128);

  const IntPolynomial& polynomial() const { return *modulus_; }
  const std::shared_ptr<const IntPolynomial>& modulus_ptr() const { return modulus_; }
  const EmbeddingSet& embeddings() const { return embeddings_; }
  Signature signature() const { return embeddings_.signature; }
  int degree() const { return modulus_->degree(); }
  unsigned precision_bits() const { return embeddings_.precision_bits; }

  /// Same field with embeddings recomputed at twice the precision.
  NumberField refined() const;

  AlgebraicInt element(IntCoeffs coeffs) const { return AlgebraicInt(modulus_, std::move(coeffs)); }
  AlgebraicInt element(std::initializer_list<long long> coeffs) const;
  AlgebraicInt zero() const;
  AlgebraicInt one() const;
  AlgebraicInt generator() const;        // a
  AlgebraicInt basis(int k) const;       // a^k, 0 <= k < n

 private:
  std::shared_ptr<const IntPolynomial> modulus_;
  EmbeddingSet embeddings_;
};

}  // namespace otm
