#include "otm/field.hpp"

#include <algorithm>
#include <cmath>

#include "otm/error.hpp"

namespace otm {

namespace {

Real pow10_neg(int digits) { return pow(Real(10), -digits); }

MpComplex horner(const std::vector<Real>& coeffs, const MpComplex& z) {
  MpComplex acc(Real(0), Real(0));
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z;
    acc.re += *it;
  }
  return acc;
}

// f(z) and f'(z) in one pass.
std::pair<MpComplex, MpComplex> horner_with_derivative(const std::vector<Real>& coeffs,
                                                       const MpComplex& z) {
  MpComplex p(Real(0), Real(0));
  MpComplex dp(Real(0), Real(0));
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    dp = dp * z + p;
    p = p * z;
    p.re += *it;
  }
  return {p, dp};
}

[[noreturn]] void convergence_failure(const std::string& what) {
  throw Error(ErrorCode::ConvergenceFailure, what);
}

}  // namespace

Real EmbeddingSet::tolerance() const {
  PrecisionScope scope(precision_bits);
  return pow10_neg(tolerance_digits);
}

int default_tolerance_digits(unsigned precision_bits) {
  return static_cast<int>(0.8 * precision_bits * 0.30102999566398120);
}

EmbeddingSet compute_embeddings(const IntPolynomial& f, unsigned precision_bits) {
  return compute_embeddings(f, precision_bits, default_tolerance_digits(precision_bits));
}

EmbeddingSet compute_embeddings(const IntPolynomial& f, unsigned precision_bits,
                                int tolerance_digits) {
  if (precision_bits < 64) {
    throw Error(ErrorCode::InvalidConfig, "precision_bits must be at least 64");
  }
  PrecisionScope scope(precision_bits);
  const int n = f.degree();
  std::vector<Real> c;
  for (const auto& v : f.coeffs()) c.push_back(to_real(v));
  const Real eps = pow10_neg(tolerance_digits);
  const Real dk_stop = pow10_neg(static_cast<int>(digits10_for_bits(precision_bits) / 3));

  // Durand-Kerner from points on a circle of the root-bound radius.
  double radius = 0;
  for (int k = 1; k <= n; ++k) {
    double v = std::fabs(f[n - k].convert_to<double>());
    if (k == n) v /= 2;
    radius = std::max(radius, std::pow(v, 1.0 / k));
  }
  radius = std::max(2 * radius, 1.0);
  std::vector<MpComplex> z(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2 * M_PI * k / n + 0.4;
    z[k] = MpComplex(Real(radius * std::cos(theta)), Real(radius * std::sin(theta)));
  }
  bool settled = false;
  for (int iter = 0; iter < 5000 && !settled; ++iter) {
    Real max_step = 0;
    for (int k = 0; k < n; ++k) {
      MpComplex denom(Real(1), Real(0));
      for (int j = 0; j < n; ++j) {
        if (j != k) denom = denom * (z[k] - z[j]);
      }
      if (denom.norm2() == 0) {
        z[k].re += Real(1e-3);
        continue;
      }
      const MpComplex step = horner(c, z[k]) / denom;
      z[k] -= step;
      const Real rel = step.abs() / (1 + z[k].abs());
      if (rel > max_step) max_step = rel;
    }
    settled = max_step < dk_stop;
  }
  if (!settled) convergence_failure("simultaneous iteration did not settle");

  for (int k = 0; k < n; ++k) {
    bool done = false;
    for (int iter = 0; iter < 200 && !done; ++iter) {
      auto [p, dp] = horner_with_derivative(c, z[k]);
      if (dp.norm2() == 0) convergence_failure("vanishing derivative in Newton refinement");
      const MpComplex step = p / dp;
      z[k] -= step;
      done = step.abs() < eps;
    }
    if (!done) convergence_failure("Newton refinement hit the iteration cap");
  }

  const int s = poly::count_real_roots(f.coeffs());
  if ((n - s) % 2 != 0) convergence_failure("inconsistent real-root count");
  const int t = (n - s) / 2;
  if (s == 0 || t == 0) {
    throw Error(ErrorCode::SignatureUnsupported,
                "signature (s, t) = (" + std::to_string(s) + ", " + std::to_string(t) +
                    "); both must be positive");
  }

  std::sort(z.begin(), z.end(),
            [](const MpComplex& a, const MpComplex& b) { return abs(a.im) < abs(b.im); });
  const Real real_cut = sqrt(eps);
  if (abs(z[s - 1].im) > real_cut || abs(z[s].im) <= real_cut) {
    convergence_failure("cannot separate real roots from complex roots");
  }

  std::vector<Real> real_roots;
  for (int k = 0; k < s; ++k) {
    Real x = z[k].re;
    bool done = false;
    for (int iter = 0; iter < 200 && !done; ++iter) {
      auto [p, dp] = horner_with_derivative(c, MpComplex(x));
      const Real step = p.re / dp.re;
      x -= step;
      done = abs(step) < eps;
    }
    if (!done) convergence_failure("real Newton refinement hit the iteration cap");
    real_roots.push_back(x);
  }
  std::sort(real_roots.begin(), real_roots.end());

  std::vector<MpComplex> upper;
  for (int k = s; k < n; ++k) {
    if (z[k].im > 0) upper.push_back(z[k]);
  }
  if (static_cast<int>(upper.size()) != t) convergence_failure("unbalanced conjugate pairs");
  std::sort(upper.begin(), upper.end(), [](const MpComplex& a, const MpComplex& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });

  EmbeddingSet out;
  out.signature = {s, t};
  out.precision_bits = precision_bits;
  out.tolerance_digits = tolerance_digits;
  for (auto& x : real_roots) out.roots.emplace_back(x, Real(0));
  for (auto& u : upper) out.roots.push_back(u);
  for (auto& u : upper) out.roots.push_back(u.conj());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((out.roots[i] - out.roots[j]).abs() < 10 * eps) convergence_failure("coincident roots");
    }
  }

  // Rebuild prod (x - r_i) and compare against f.
  std::vector<MpComplex> prod{MpComplex(Real(1), Real(0))};
  for (const auto& r : out.roots) {
    std::vector<MpComplex> next(prod.size() + 1);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] += prod[i];
      next[i] -= prod[i] * r;
    }
    prod = std::move(next);
  }
  const Real budget = eps * n * pow(Real(2), n);
  for (int i = 0; i <= n; ++i) {
    const MpComplex diff = prod[i] - MpComplex(c[i]);
    if (diff.abs() >= budget) convergence_failure("root reconstruction exceeds tolerance");
  }

  for (const auto& r : out.roots) out.roots_double.push_back(r.to_double());
  return out;
}

AlgebraicInt::AlgebraicInt(std::shared_ptr<const IntPolynomial> modulus, IntCoeffs coeffs)
    : modulus_(std::move(modulus)) {
  const auto n = static_cast<std::size_t>(modulus_->degree());
  if (coeffs.size() > n) coeffs = poly::reduce_monic(std::move(coeffs), modulus_->coeffs());
  coeffs.resize(n, BigInt(0));
  coeffs_ = std::move(coeffs);
}

bool AlgebraicInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

bool AlgebraicInt::is_one() const {
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

namespace {

void require_same_field(const AlgebraicInt& a, const AlgebraicInt& b) {
  if (a.modulus_ptr() != b.modulus_ptr() && !(a.modulus() == b.modulus())) {
    throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
  }
}

}  // namespace

AlgebraicInt operator+(const AlgebraicInt& a, const AlgebraicInt& b) {
  require_same_field(a, b);
  IntCoeffs r = a.coeffs_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.coeffs_[i];
  return AlgebraicInt(a.modulus_, std::move(r));
}

AlgebraicInt operator-(const AlgebraicInt& a, const AlgebraicInt& b) {
  require_same_field(a, b);
  IntCoeffs r = a.coeffs_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.coeffs_[i];
  return AlgebraicInt(a.modulus_, std::move(r));
}

AlgebraicInt operator-(const AlgebraicInt& a) {
  IntCoeffs r = a.coeffs_;
  for (auto& c : r) c = -c;
  return AlgebraicInt(a.modulus_, std::move(r));
}

AlgebraicInt operator*(const AlgebraicInt& a, const AlgebraicInt& b) {
  require_same_field(a, b);
  return AlgebraicInt(a.modulus_, poly::multiply(a.coeffs_, b.coeffs_));
}

bool operator==(const AlgebraicInt& a, const AlgebraicInt& b) {
  return a.coeffs_ == b.coeffs_ && (a.modulus_ptr() == b.modulus_ptr() || a.modulus() == b.modulus());
}

AlgebraicInt pow(const AlgebraicInt& a, unsigned e) {
  IntCoeffs one{BigInt(1)};
  AlgebraicInt result(a.modulus_ptr(), one);
  AlgebraicInt base = a;
  while (e) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

AlgebraicInt inverse(const AlgebraicInt& a) {
  using RatPoly = std::vector<BigRational>;
  auto trim = [](RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto sub_mul = [&](const RatPoly& x, const RatPoly& q, const RatPoly& y) {
    RatPoly r(std::max(x.size(), q.size() + y.size()), BigRational(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) r[i + j] -= q[i] * y[j];
    trim(r);
    return r;
  };

  RatPoly r0(a.modulus().coeffs().begin(), a.modulus().coeffs().end());
  RatPoly r1(a.coeffs().begin(), a.coeffs().end());
  trim(r1);
  if (r1.empty()) throw Error(ErrorCode::InverseNotInOrder, "zero has no inverse");
  RatPoly s0, s1{BigRational(1)};
  while (r1.size() > 1) {
    RatPoly q(r0.size() - r1.size() + 1, BigRational(0));
    RatPoly rem = r0;
    while (rem.size() >= r1.size()) {
      const std::size_t shift = rem.size() - r1.size();
      const BigRational f = rem.back() / r1.back();
      q[shift] = f;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= f * r1[j];
      rem.pop_back();
      trim(rem);
      if (rem.empty()) break;
    }
    RatPoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw Error(ErrorCode::InverseNotInOrder, "element shares a factor with f");
  }
  // r1 is a nonzero constant: s1 * a = r1 (mod f).
  IntCoeffs out;
  for (const auto& v : s1) {
    const BigRational q = v / r1[0];
    if (denominator(q) != 1) {
      throw Error(ErrorCode::InverseNotInOrder, a.to_string() + " is not invertible in Z[a]");
    }
    out.push_back(numerator(q));
  }
  return AlgebraicInt(a.modulus_ptr(), std::move(out));
}

BigInt norm_resultant(const AlgebraicInt& a) {
  return poly::resultant(a.modulus().coeffs(), a.coeffs());
}

std::vector<MpComplex> embed_precise(const AlgebraicInt& a, const EmbeddingSet& emb) {
  PrecisionScope scope(emb.precision_bits);
  std::vector<Real> c;
  for (const auto& v : a.coeffs()) c.push_back(to_real(v));
  std::vector<MpComplex> out;
  out.reserve(emb.roots.size());
  for (const auto& r : emb.roots) out.push_back(horner(c, r));
  // real roots carry an exact zero imaginary part, so the first s entries are real
  return out;
}

std::vector<std::complex<double>> embed(const AlgebraicInt& a, const EmbeddingSet& emb) {
  std::vector<std::complex<double>> out;
  for (const auto& v : embed_precise(a, emb)) out.push_back(v.to_double());
  return out;
}

BigInt norm_exact(const AlgebraicInt& a, const EmbeddingSet& emb) {
  const BigInt exact = norm_resultant(a);
  PrecisionScope scope(emb.precision_bits);
  MpComplex prod(Real(1), Real(0));
  for (const auto& v : embed_precise(a, emb)) prod = prod * v;
  const Real gap = abs(prod.re - to_real(exact));
  if (gap >= Real(0.5)) {
    throw Error(ErrorCode::CrossCheckMismatch,
                "resultant " + exact.str() + " vs embedding product " + prod.re.str(20));
  }
  return exact;
}

NumberField::NumberField(IntPolynomial f, unsigned precision_bits)
    : modulus_(std::make_shared<const IntPolynomial>(std::move(f))),
      embeddings_(compute_embeddings(*modulus_, precision_bits)) {}

NumberField NumberField::refined() const {
  NumberField copy = *this;
  copy.embeddings_ = compute_embeddings(*modulus_, 2 * precision_bits());
  return copy;
}

AlgebraicInt NumberField::element(std::initializer_list<long long> coeffs) const {
  return AlgebraicInt(modulus_, IntCoeffs(coeffs.begin(), coeffs.end()));
}

AlgebraicInt NumberField::zero() const { return AlgebraicInt(modulus_, {}); }
AlgebraicInt NumberField::one() const { return basis(0); }
AlgebraicInt NumberField::generator() const { return basis(1); }

AlgebraicInt NumberField::basis(int k) const {
  IntCoeffs c(static_cast<std::size_t>(k) + 1, BigInt(0));
  c[k] = 1;
  return AlgebraicInt(modulus_, std::move(c));
}

}  // namespace otm
