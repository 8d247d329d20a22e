#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otm/field.hpp"
#include "otm/units.hpp"

namespace otm {

/// (u, a) in U x| Z[a], acting by z_i -> sigma_i(u) z_i + sigma_i(a).
/// u is totally positive, so the action preserves H^s x C^t.
struct GroupElement {
  Unit u;
  AlgebraicInt a;
};

bool operator==(const GroupElement& g, const GroupElement& h);
bool is_identity(const GroupElement& g);

GroupElement identity_element(const NumberField& field);
GroupElement translation(const AlgebraicInt& a);
/// Throws NotTotallyPositive when u is not totally positive.
GroupElement make_element(const Unit& u, const AlgebraicInt& a, const NumberField& field);

/// (u1, a1)(u2, a2) = (u1 u2, u1 a2 + a1), i.e. act(g1 g2) = act(g1) o act(g2).
GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

using CVector = std::vector<std::complex<double>>;

/// A point of H^s x C^t: z_1..z_s in the upper half plane, z_{s+1}..z_m free.
struct Point {
  CVector z;
};

/// Real tangent vector in complex coordinates, dz_i(v) = v_i.
struct Tangent {
  CVector v;
};

bool in_domain(const Point& p, Signature sig);

/// Throws LeftHalfSpace if an H coordinate of the image is not strictly
/// positive; that only happens if a non-totally-positive unit got through.
Point act(const GroupElement& g, const Point& p, const NumberField& field);

/// Linear part of the affine map: (dg v)_i = sigma_i(u) v_i.
Tangent differential(const GroupElement& g, const Tangent& v, const NumberField& field);

struct SampleBox {
  double im_min = 0.1;
  double im_max = 10.0;
  double re_min = -10.0;
  double re_max = 10.0;
};

Point sample_point(std::mt19937_64& rng, Signature sig, const SampleBox& box = {});
Point sample_point(std::uint64_t seed, Signature sig, const SampleBox& box = {});
/// Components uniform in the unit square.
Tangent sample_tangent(std::mt19937_64& rng, Signature sig);

/// Word notation, tokens separated by spaces and applied left to right:
///   uJ      scaling by the J-th unit generator (1-based; `u` means `u1`)
///   aK      translation by a^K (`a` means `a0`, i.e. by 1)
///   -aK     translation by -a^K
///   tok^-1  inverse of a token
/// "u a" is z -> u z + 1, the element (u, 1).
GroupElement parse_word(std::string_view text, std::span<const Unit> generators,
                        const NumberField& field);

struct Letter {
  std::string text;
  GroupElement element;
};

/// The 4 s n letters (u_j^e, +-a^k) = "uj[^-1] [-]ak", e = +-1.
std::vector<Letter> affine_alphabet(std::span<const Unit> generators, const NumberField& field);

struct Word {
  std::string text;
  int length = 0;
  GroupElement element;
};

/// All distinct non-identity elements reachable by words of length 1..max_length,
/// in order of first appearance (shorter words first, then letter order).
std::vector<Word> enumerate_words(std::span<const Letter> alphabet, int max_length);

/// A word of uniformly random length in 1..max_length with uniform letters.
Word random_word(std::mt19937_64& rng, std::span<const Letter> alphabet, int max_length);

}  // namespace otm
