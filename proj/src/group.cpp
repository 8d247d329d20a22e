#include "otm/group.hpp"

#include <map>
#include <sstream>

#include "otm/error.hpp"

namespace otm {

bool operator==(const GroupElement& g, const GroupElement& h) {
  return g.u.element == h.u.element && g.a == h.a;
}

bool is_identity(const GroupElement& g) { return g.u.element.is_one() && g.a.is_zero(); }

GroupElement identity_element(const NumberField& field) {
  return GroupElement{Unit{field.one(), 1}, field.zero()};
}

GroupElement translation(const AlgebraicInt& a) {
  IntCoeffs one{BigInt(1)};
  return GroupElement{Unit{AlgebraicInt(a.modulus_ptr(), one), 1}, a};
}

GroupElement make_element(const Unit& u, const AlgebraicInt& a, const NumberField& field) {
  if (!is_totally_positive(u, field)) {
    throw Error(ErrorCode::NotTotallyPositive, u.element.to_string());
  }
  return GroupElement{u, a};
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  return GroupElement{g1.u * g2.u, g1.u.element * g2.a + g1.a};
}

GroupElement inverse(const GroupElement& g) {
  Unit inv = inverse(g.u);
  return GroupElement{inv, -(inv.element * g.a)};
}

bool in_domain(const Point& p, Signature sig) {
  if (static_cast<int>(p.z.size()) != sig.m()) return false;
  for (int i = 0; i < sig.s; ++i) {
    if (!(p.z[i].imag() > 0)) return false;
  }
  return true;
}

Point act(const GroupElement& g, const Point& p, const NumberField& field) {
  const Signature sig = field.signature();
  const auto su = embed(g.u.element, field.embeddings());
  const auto sa = embed(g.a, field.embeddings());
  Point out{CVector(sig.m())};
  for (int i = 0; i < sig.m(); ++i) out.z[i] = su[i] * p.z[i] + sa[i];
  for (int i = 0; i < sig.s; ++i) {
    if (!(out.z[i].imag() > 0)) {
      throw Error(ErrorCode::LeftHalfSpace, "slot " + std::to_string(i + 1) + " left H");
    }
  }
  return out;
}

Tangent differential(const GroupElement& g, const Tangent& v, const NumberField& field) {
  const Signature sig = field.signature();
  const auto su = embed(g.u.element, field.embeddings());
  Tangent out{CVector(sig.m())};
  for (int i = 0; i < sig.m(); ++i) out.v[i] = su[i] * v.v[i];
  return out;
}

Point sample_point(std::mt19937_64& rng, Signature sig, const SampleBox& box) {
  std::uniform_real_distribution<double> re(box.re_min, box.re_max);
  std::uniform_real_distribution<double> im(box.im_min, box.im_max);
  Point p{CVector(sig.m())};
  for (int i = 0; i < sig.m(); ++i) {
    const double x = re(rng);
    const double y = i < sig.s ? im(rng) : re(rng);
    p.z[i] = {x, y};
  }
  return p;
}

Point sample_point(std::uint64_t seed, Signature sig, const SampleBox& box) {
  std::mt19937_64 rng(seed);
  return sample_point(rng, sig, box);
}

Tangent sample_tangent(std::mt19937_64& rng, Signature sig) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Tangent t{CVector(sig.m())};
  for (auto& c : t.v) {
    const double x = d(rng);
    c = {x, d(rng)};
  }
  return t;
}

namespace {

GroupElement parse_token(std::string_view tok, std::span<const Unit> generators,
                         const NumberField& field) {
  const std::string original(tok);
  auto fail = [&](const std::string& why) -> GroupElement {
    throw Error(ErrorCode::InvalidWord, "token '" + original + "': " + why);
  };
  bool inverted = false;
  if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
    inverted = true;
    tok.remove_suffix(3);
  }
  bool negated = false;
  if (!tok.empty() && tok.front() == '-') {
    negated = true;
    tok.remove_prefix(1);
  }
  if (tok.empty()) return fail("empty");
  const char kind = tok.front();
  tok.remove_prefix(1);
  int index = -1;
  if (!tok.empty()) {
    index = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') return fail("bad index");
      index = index * 10 + (ch - '0');
      if (index > 1000) return fail("index out of range");
    }
  }

  GroupElement g = identity_element(field);
  if (kind == 'u') {
    if (negated) return fail("units cannot be negated");
    const int j = index < 0 ? 1 : index;
    if (j < 1 || j > static_cast<int>(generators.size())) {
      return fail("generator index out of range 1.." + std::to_string(generators.size()));
    }
    g = make_element(generators[j - 1], field.zero(), field);
  } else if (kind == 'a') {
    const int k = index < 0 ? 0 : index;
    if (k >= field.degree()) return fail("basis index out of range 0.." + std::to_string(field.degree() - 1));
    AlgebraicInt b = field.basis(k);
    g = translation(negated ? -b : b);
  } else {
    return fail("expected u or a");
  }
  return inverted ? inverse(g) : g;
}

std::string element_key(const GroupElement& g) {
  std::ostringstream os;
  for (const auto& c : g.u.element.coeffs()) os << c << ',';
  os << '|';
  for (const auto& c : g.a.coeffs()) os << c << ',';
  return os.str();
}

}  // namespace

GroupElement parse_word(std::string_view text, std::span<const Unit> generators,
                        const NumberField& field) {
  GroupElement g = identity_element(field);
  std::istringstream in{std::string(text)};
  std::string tok;
  int count = 0;
  while (in >> tok) {
    g = compose(parse_token(tok, generators, field), g);
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::InvalidWord, "empty word");
  return g;
}

std::vector<Letter> affine_alphabet(std::span<const Unit> generators, const NumberField& field) {
  std::vector<Letter> out;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const GroupElement up = make_element(generators[j], field.zero(), field);
    const GroupElement down = inverse(up);
    for (int e : {1, -1}) {
      for (int k = 0; k < field.degree(); ++k) {
        for (int sign : {1, -1}) {
          const AlgebraicInt b = sign > 0 ? field.basis(k) : -field.basis(k);
          std::string text = "u" + std::to_string(j + 1) + (e < 0 ? "^-1" : "") + " " +
                             (sign < 0 ? "-" : "") + "a" + std::to_string(k);
          out.push_back({std::move(text), compose(translation(b), e > 0 ? up : down)});
        }
      }
    }
  }
  return out;
}

std::vector<Word> enumerate_words(std::span<const Letter> alphabet, int max_length) {
  std::vector<Word> out;
  std::map<std::string, bool> seen;
  std::vector<Word> frontier;
  for (const auto& l : alphabet) frontier.push_back({l.text, 1, l.element});
  for (int len = 1; len <= max_length; ++len) {
    for (const auto& w : frontier) {
      if (is_identity(w.element)) continue;
      if (seen.emplace(element_key(w.element), true).second) out.push_back(w);
    }
    if (len == max_length) break;
    std::vector<Word> next;
    next.reserve(frontier.size() * alphabet.size());
    for (const auto& w : frontier) {
      for (const auto& l : alphabet) {
        next.push_back({w.text + " " + l.text, len + 1, compose(l.element, w.element)});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Word random_word(std::mt19937_64& rng, std::span<const Letter> alphabet, int max_length) {
  std::uniform_int_distribution<int> len_dist(1, max_length);
  std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
  const int len = len_dist(rng);
  const Letter& head = alphabet[letter(rng)];
  Word w{head.text, len, head.element};
  for (int i = 1; i < len; ++i) {
    const Letter& l = alphabet[letter(rng)];
    w.text += " " + l.text;
    w.element = compose(l.element, w.element);
  }
  return w;
}

}  // namespace otm
