#include "otm/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "otm/error.hpp"

namespace otm {
namespace poly {

void trim(IntCoeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntCoeffs& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

BigInt evaluate(const IntCoeffs& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntCoeffs derivative(const IntCoeffs& p) {
  IntCoeffs d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long long>(i));
  trim(d);
  return d;
}

IntCoeffs multiply(const IntCoeffs& a, const IntCoeffs& b) {
  if (a.empty() || b.empty()) return {};
  IntCoeffs r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

namespace {

// Long division by a monic divisor; returns {quotient, remainder}.
std::pair<IntCoeffs, IntCoeffs> divmod_monic(IntCoeffs num, const IntCoeffs& den) {
  trim(num);
  const int dd = degree(den);
  if (static_cast<int>(num.size()) - 1 < dd) return {{}, num};
  IntCoeffs q(num.size() - dd, BigInt(0));
  for (int i = static_cast<int>(num.size()) - 1; i >= dd; --i) {
    const BigInt c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  num.resize(dd);
  trim(num);
  trim(q);
  return {q, num};
}

BigInt content(const IntCoeffs& p) {
  BigInt g = 0;
  for (const auto& c : p) g = gcd(g, abs(c));
  return g;
}

IntCoeffs divide_by(const IntCoeffs& p, const BigInt& d) {
  IntCoeffs r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] / d;
  return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b, over Z.
IntCoeffs pseudo_remainder(IntCoeffs a, const IntCoeffs& b) {
  const int db = degree(b);
  const BigInt& lb = b[db];
  int da = degree(a);
  int e = da - db + 1;
  while (da >= db) {
    const BigInt la = a[da];
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[da - db + j] -= la * b[j];
    --e;
    a.resize(da);
    trim(a);
    da = degree(a);
  }
  if (e > 0) {
    BigInt f = pow(lb, static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

BigInt ipow(const BigInt& b, int e) { return pow(b, static_cast<unsigned>(e)); }

using RatCoeffs = std::vector<BigRational>;

void trim(RatCoeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatCoeffs remainder(RatCoeffs a, const RatCoeffs& b) {
  const int db = static_cast<int>(b.size()) - 1;
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    const BigRational f = a[da] / b[db];
    for (int j = 0; j <= db; ++j) a[da - db + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::optional<IntCoeffs> divide_exact_monic(const IntCoeffs& num, const IntCoeffs& den) {
  auto [q, r] = divmod_monic(num, den);
  if (!r.empty()) return std::nullopt;
  return q;
}

IntCoeffs reduce_monic(IntCoeffs num, const IntCoeffs& den) {
  return divmod_monic(std::move(num), den).second;
}

BigInt resultant(IntCoeffs a, IntCoeffs b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;

  const BigInt ca = content(a);
  const BigInt cb = content(b);
  a = divide_by(a, ca);
  b = divide_by(b, cb);
  BigInt g = 1;
  BigInt h = 1;
  int s = 1;
  const BigInt t = ipow(ca, degree(b)) * ipow(cb, degree(a));
  if (degree(a) < degree(b)) {
    std::swap(a, b);
    if (degree(a) % 2 == 1 && degree(b) % 2 == 1) s = -1;
  }
  if (degree(b) == 0) return s * t * ipow(b[0], degree(a));

  for (;;) {
    const int delta = degree(a) - degree(b);
    if (degree(a) % 2 == 1 && degree(b) % 2 == 1) s = -s;
    IntCoeffs r = pseudo_remainder(a, b);
    a = b;
    if (r.empty()) return 0;
    b = divide_by(r, g * ipow(h, delta));
    g = a[degree(a)];
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = ipow(g, delta) / ipow(h, delta - 1);
    }
    if (degree(b) > 0) continue;
    const int da = degree(a);
    h = ipow(b[0], da) / ipow(h, da - 1);
    return s * t * h;
  }
}

int count_real_roots(const IntCoeffs& f) {
  RatCoeffs p0(f.begin(), f.end());
  IntCoeffs df = derivative(f);
  RatCoeffs p1(df.begin(), df.end());
  trim(p0);
  trim(p1);
  std::vector<RatCoeffs> seq{p0};
  while (!p1.empty()) {
    RatCoeffs r = remainder(p0, p1);
    for (auto& c : r) c = -c;
    seq.push_back(p1);
    p0 = std::move(p1);
    p1 = std::move(r);
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& p : seq) {
    const int lc = p.back() > 0 ? 1 : -1;
    const int deg = static_cast<int>(p.size()) - 1;
    at_pos.push_back(lc);
    at_neg.push_back(deg % 2 == 0 ? lc : -lc);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

std::string format(const IntCoeffs& p, char var) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    const BigInt& c = p[i];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace poly

namespace {

double fujiwara_bound(const IntCoeffs& f) {
  const int n = static_cast<int>(f.size()) - 1;
  long double best = 0;
  for (int k = 1; k <= n; ++k) {
    long double c = std::fabs(f[n - k].convert_to<long double>());
    if (k == n) c /= 2;
    best = std::max(best, std::pow(c, 1.0L / k));
  }
  return static_cast<double>(2 * best * (1 + 1e-9L)) + 1e-9;
}

std::vector<long long> signed_divisors_up_to(const BigInt& value, long long limit) {
  std::vector<long long> out;
  const BigInt mag = abs(value);
  for (long long d = 1; d <= limit && BigInt(d) <= mag; ++d) {
    if (mag % d == 0) {
      out.push_back(d);
      out.push_back(-d);
    }
  }
  return out;
}

std::optional<IntCoeffs> find_monic_factor(const IntCoeffs& f, int k, double spec_bound,
                                           double root_bound) {
  // Coefficient of x^(k-j) in a degree-k factor is an elementary symmetric
  // function of j roots: |b| <= C(k, j) R^j.
  std::vector<long long> bound(k + 1, 0);
  double binom = 1;
  for (int j = 1; j <= k; ++j) {
    binom = binom * (k - j + 1) / j;
    const double b = std::min(spec_bound, std::floor(binom * std::pow(root_bound, j)));
    if (b > 2e9) {
      throw Error(ErrorCode::IrreducibilityUndecided,
                  "factor coefficient bound too large for exhaustive search");
    }
    bound[j] = static_cast<long long>(b);
  }
  const auto constants = signed_divisors_up_to(f[0], bound[k]);
  double candidates = static_cast<double>(constants.size());
  for (int j = 1; j < k; ++j) candidates *= static_cast<double>(2 * bound[j] + 1);
  if (candidates > 2e8) {
    throw Error(ErrorCode::IrreducibilityUndecided,
                "factor search box has " + std::to_string(static_cast<long long>(candidates)) +
                    " candidates");
  }

  const BigInt f_one = poly::evaluate(f, 1);
  const BigInt f_minus_one = poly::evaluate(f, -1);
  const BigInt f_two = poly::evaluate(f, 2);

  // g = x^k + b[k-1] x^(k-1) + ... + b[0]; b[k-j] ranges over +-bound[j].
  std::vector<long long> b(k, 0);
  IntCoeffs g(k + 1, BigInt(0));
  g[k] = 1;

  auto divides = [](long long d, const BigInt& v) { return d != 0 && v % d == 0; };

  for (long long c0 : constants) {
    b[0] = c0;
    for (int i = 1; i < k; ++i) b[i] = -bound[k - i];
    for (;;) {
      long long g1 = 1, gm1 = (k % 2 == 0) ? 1 : -1, g2 = 1LL << k;
      for (int i = 0; i < k; ++i) {
        g1 += b[i];
        gm1 += (i % 2 == 0) ? b[i] : -b[i];
        g2 += b[i] << i;
      }
      if (divides(g1, f_one) && divides(gm1, f_minus_one) && divides(g2, f_two)) {
        for (int i = 0; i < k; ++i) g[i] = b[i];
        if (poly::divide_exact_monic(f, g)) return g;
      }
      int i = 1;
      while (i < k && b[i] == bound[k - i]) {
        b[i] = -bound[k - i];
        ++i;
      }
      if (i >= k) break;
      ++b[i];
    }
  }
  return std::nullopt;
}

}  // namespace

IntPolynomial validate_polynomial(std::span<const BigInt> input, bool assume_irreducible) {
  IntCoeffs f(input.begin(), input.end());
  if (f.empty() || f.back() != 1) {
    throw Error(ErrorCode::NotMonic, "leading coefficient must be 1");
  }
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 3) throw Error(ErrorCode::DegreeTooSmall, "degree " + std::to_string(n) + " < 3");

  if (f[0] == 0) throw Error(ErrorCode::Reducible, "x");
  const double root_bound = fujiwara_bound(f);
  const auto limit = static_cast<long long>(std::min(root_bound, 9.0e15));
  for (long long d : signed_divisors_up_to(f[0], limit)) {
    if (poly::evaluate(f, d) == 0) {
      throw Error(ErrorCode::Reducible, poly::format(IntCoeffs{BigInt(-d), BigInt(1)}));
    }
  }

  if (n > 8) {
    if (!assume_irreducible) {
      throw Error(ErrorCode::IrreducibilityUndecided,
                  "degree " + std::to_string(n) + " > 8; set assume_irreducible to proceed");
    }
    return IntPolynomial(std::move(f));
  }

  long double norm2 = 0;
  for (const auto& c : f) {
    const long double v = c.convert_to<long double>();
    norm2 += v * v;
  }
  const double spec_bound =
      std::floor(static_cast<double>(std::ldexp(1.0L + std::sqrt(norm2), n)));

  for (int k = 2; k <= n / 2; ++k) {
    if (auto factor = find_monic_factor(f, k, spec_bound, root_bound)) {
      throw Error(ErrorCode::Reducible, poly::format(*factor));
    }
  }
  return IntPolynomial(std::move(f));
}

}  // namespace otm
