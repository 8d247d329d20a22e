#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace otm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::mpfr_float;

inline unsigned digits10_for_bits(unsigned bits) {
  // ceil(bits * log10(2))
  return static_cast<unsigned>((static_cast<unsigned long>(bits) * 30103UL + 99999UL) / 100000UL);
}

/// Sets the MPFR default precision for the lifetime of the scope. MPFR
/// temporaries pick up the default, so every multiprecision computation runs
/// inside one of these. Not thread safe: the default is process global.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for_bits(bits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return Real(static_cast<long long>(v));
  }
  return Real(v.str());
}

/// Minimal complex arithmetic over MPFR reals (no MPC on this platform).
struct MpComplex {
  Real re;
  Real im;

  MpComplex() : re(0), im(0) {}
  MpComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(Real r) : re(std::move(r)), im(0) {}

  MpComplex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm2()); }
  std::complex<double> to_double() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend MpComplex operator-(const MpComplex& a) { return {-a.re, -a.im}; }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend MpComplex operator*(const MpComplex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    Real d = b.norm2();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  MpComplex& operator+=(const MpComplex& b) { re += b.re; im += b.im; return *this; }
  MpComplex& operator-=(const MpComplex& b) { re -= b.re; im -= b.im; return *this; }
};

}  // namespace otm
