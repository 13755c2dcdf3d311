#pragma once

#include <string>
#include <vector>

#include "extension.hpp"
#include "rational.hpp"

namespace tamedist {

// A tame (= trivial on 1-units) character of K^*. It is determined by
//   - c: the exponent on residue units, chi(g^k) = zeta^{ck} with
//     zeta = e^{2 pi i/(q_K - 1)}, stored mod q_K - 1, and
//   - its value on the fixed uniformizer of K,
//     chi(pi_K) = e^{2 pi i z_phase} * q_K^{-z_mag},
// with z_phase mod 1 and z_mag exact rationals. All comparisons are exact.
struct TameCharacter {
  ExtensionPtr ext;
  long c = 0;
  Rational z_phase;
  Rational z_mag;
};

// Same data for a tame character of F^*, with modulus q - 1 and values on
// the uniformizer p of F written base q.
struct TameCharacterF {
  ExtensionPtr ext;
  long c = 0;
  Rational z_phase;
  Rational z_mag;
};

inline long mod_pos(long a, long m) { return ((a % m) + m) % m; }

inline TameCharacter make_character(const ExtensionPtr& ext, long c,
                                    Rational phase = Rational(0),
                                    Rational mag = Rational(0)) {
  return TameCharacter{ext, mod_pos(c, ext->units_order()), phase.mod1(), mag};
}

inline TameCharacterF make_character_F(const ExtensionPtr& ext, long c,
                                       Rational phase = Rational(0),
                                       Rational mag = Rational(0)) {
  return TameCharacterF{ext, mod_pos(c, ext->f_units_order()), phase.mod1(), mag};
}

inline void require_same_extension(const ExtensionPtr& a, const ExtensionPtr& b) {
  if (!same_extension(a, b))
    throw std::invalid_argument("characters live over different extensions");
}

inline bool char_equal(const TameCharacter& a, const TameCharacter& b) {
  require_same_extension(a.ext, b.ext);
  return a.c == b.c && a.z_phase == b.z_phase && a.z_mag == b.z_mag;
}

inline bool char_equal_F(const TameCharacterF& a, const TameCharacterF& b) {
  require_same_extension(a.ext, b.ext);
  return a.c == b.c && a.z_phase == b.z_phase && a.z_mag == b.z_mag;
}

// Deterministic ordering used when enumerating or sorting character data.
inline bool char_less(const TameCharacter& a, const TameCharacter& b) {
  if (a.c != b.c) return a.c < b.c;
  if (!(a.z_phase == b.z_phase)) return a.z_phase < b.z_phase;
  return a.z_mag < b.z_mag;
}

inline TameCharacter mul(const TameCharacter& a, const TameCharacter& b) {
  require_same_extension(a.ext, b.ext);
  return make_character(a.ext, a.c + b.c, a.z_phase + b.z_phase, a.z_mag + b.z_mag);
}

inline TameCharacter inv(const TameCharacter& a) {
  return make_character(a.ext, -a.c, -a.z_phase, -a.z_mag);
}

inline TameCharacterF mul_F(const TameCharacterF& a, const TameCharacterF& b) {
  require_same_extension(a.ext, b.ext);
  return make_character_F(a.ext, a.c + b.c, a.z_phase + b.z_phase, a.z_mag + b.z_mag);
}

inline TameCharacterF inv_F(const TameCharacterF& a) {
  return make_character_F(a.ext, -a.c, -a.z_phase, -a.z_mag);
}

// Galois twist chi^sigma = chi o sigma. Unramified: sigma raises residue
// units to the q-th power and fixes the uniformizer, so c -> c*q. Ramified:
// sigma fixes residue units and sends sqrt(d) to -sqrt(d) = sqrt(d)*(-1),
// so the uniformizer value picks up chi(-1) = (-1)^c.
inline TameCharacter galois(const TameCharacter& a) {
  if (a.ext->kind == RamKind::Unramified)
    return make_character(a.ext, a.c * (a.ext->q % a.ext->units_order()), a.z_phase, a.z_mag);
  return make_character(a.ext, a.c, a.z_phase + Rational(a.c, 2), a.z_mag);
}

// chi^{-sigma}: the contragredient-of-conjugate that pairs quotients of
// principal series data.
inline TameCharacter galois_inv(const TameCharacter& a) { return inv(galois(a)); }

// Restriction to F^*. Unramified: residue units of F are g_F = g^{q+1}
// powers and p stays the uniformizer. Ramified: p = sqrt(d)^2 * t^{-1}
// where t is the unit of dlog u0, so the value at p mixes the uniformizer
// value with chi(t)^{-1}.
inline TameCharacterF restrict_to_F(const TameCharacter& a) {
  const auto& ext = a.ext;
  if (ext->kind == RamKind::Unramified) {
    return make_character_F(ext, a.c, a.z_phase, a.z_mag * Rational(2));
  }
  Rational unit_part(a.c * ext->u0, ext->f_units_order());
  return make_character_F(ext, a.c, a.z_phase * Rational(2) - unit_part,
                          a.z_mag * Rational(2));
}

inline TameCharacterF trivial_character_F(const ExtensionPtr& ext) {
  return make_character_F(ext, 0);
}

inline TameCharacter trivial_character(const ExtensionPtr& ext) {
  return make_character(ext, 0);
}

// The norm residue character eta of F^*: the nontrivial character of the
// order-2 quotient F^*/N(K^*). Unramified: norms are exactly the elements
// of even valuation, so eta is unramified with eta(p) = -1. Ramified: norms
// of units are the squares and N(sqrt(d)) = -d forces
// eta(p) = (-1)^{(q-1)/2 + u0}.
inline TameCharacterF eta_character(const ExtensionPtr& ext) {
  if (ext->kind == RamKind::Unramified)
    return make_character_F(ext, 0, Rational(1, 2));
  long e = (ext->q - 1) / 2 + ext->u0;
  return make_character_F(ext, (ext->q - 1) / 2,
                          e % 2 == 0 ? Rational(0) : Rational(1, 2));
}

inline bool is_trivial_on_F(const TameCharacter& a) {
  return char_equal_F(restrict_to_F(a), trivial_character_F(a.ext));
}

inline bool equals_eta_on_F(const TameCharacter& a) {
  return char_equal_F(restrict_to_F(a), eta_character(a.ext));
}

// The normalized absolute value |.|_K as a tame character: trivial on
// units, |pi_K|_K = q_K^{-1}.
inline TameCharacter abs_K(const ExtensionPtr& ext) {
  return make_character(ext, 0, Rational(0), Rational(1));
}

// Minimal deterministic extension of a character of F^* to K^*: keep the
// same residue exponent (smallest nonnegative lift) and solve for the
// uniformizer value; in the ramified case the two phase solutions differ by
// 1/2 and the smaller one in [0,1) is taken.
inline TameCharacter extend_from_F(const TameCharacterF& a) {
  const auto& ext = a.ext;
  if (ext->kind == RamKind::Unramified)
    return make_character(ext, a.c, a.z_phase, a.z_mag / Rational(2));
  Rational target = (a.z_phase + Rational(a.c * ext->u0, ext->f_units_order())).mod1();
  return make_character(ext, a.c, target / Rational(2), a.z_mag / Rational(2));
}

// Exact value of a character at a tame element: e^{2 pi i phase} * q^{-mag_q}
// with the magnitude exponent always written base q (the residue size of F)
// so values from both sides of the extension compare directly.
struct ExactValue {
  Rational phase;  // mod 1
  Rational mag_q;

  bool is_one() const { return phase.is_zero() && mag_q.is_zero(); }
  friend bool operator==(const ExactValue& x, const ExactValue& y) {
    return x.phase == y.phase && x.mag_q == y.mag_q;
  }
};

inline ExactValue evaluate(const TameCharacter& a, const TameKElement& x) {
  long o = a.ext->units_order();
  Rational phase = (Rational(x.v) * a.z_phase + Rational(a.c * mod_pos(x.unit_dlog, o), o)).mod1();
  int base_factor = a.ext->kind == RamKind::Unramified ? 2 : 1;
  return ExactValue{phase, Rational(x.v * base_factor) * a.z_mag};
}

inline ExactValue evaluate_F(const TameCharacterF& a, const TameFElement& x) {
  long o = a.ext->f_units_order();
  Rational phase = (Rational(x.v) * a.z_phase + Rational(a.c * mod_pos(x.unit_dlog, o), o)).mod1();
  return ExactValue{phase, Rational(x.v) * a.z_mag};
}

// All tame characters of K^* that restrict trivially to F^*. Finite family:
// residue exponent killed on F-units, trivial uniformizer value.
inline std::vector<TameCharacter> characters_trivial_on_F(const ExtensionPtr& ext) {
  std::vector<TameCharacter> out;
  if (ext->kind == RamKind::Unramified) {
    for (long k = 0; k <= ext->q; ++k)
      out.push_back(make_character(ext, k * (ext->q - 1)));
  } else {
    out.push_back(make_character(ext, 0, Rational(0)));
    out.push_back(make_character(ext, 0, Rational(1, 2)));
  }
  return out;
}

// All tame characters of K^* whose restriction to F^* equals eta.
inline std::vector<TameCharacter> characters_restricting_to_eta(const ExtensionPtr& ext) {
  std::vector<TameCharacter> out;
  if (ext->kind == RamKind::Unramified) {
    for (long k = 0; k <= ext->q; ++k)
      out.push_back(make_character(ext, k * (ext->q - 1), Rational(1, 2)));
    return out;
  }
  long c = (ext->q - 1) / 2;
  Rational eta_phase = eta_character(ext).z_phase;
  Rational x = (eta_phase + Rational(c * ext->u0, ext->f_units_order())).mod1();
  Rational lo = x / Rational(2);
  out.push_back(make_character(ext, c, lo));
  out.push_back(make_character(ext, c, lo + Rational(1, 2)));
  return out;
}

// The finite grid of unitary tame characters: every residue exponent
// crossed with every uniformizer phase of denominator q_K - 1, magnitude 0.
inline std::vector<TameCharacter> unitary_family(const ExtensionPtr& ext) {
  long o = ext->units_order();
  std::vector<TameCharacter> out;
  out.reserve(o * o);
  for (long c = 0; c < o; ++c)
    for (long j = 0; j < o; ++j)
      out.push_back(make_character(ext, c, Rational(j, o)));
  return out;
}

inline std::string format_character(const TameCharacter& a) {
  std::string s = "c=" + std::to_string(a.c);
  if (!a.z_phase.is_zero()) s += ",phase=" + a.z_phase.str();
  if (!a.z_mag.is_zero()) s += ",mag=" + a.z_mag.str();
  return s;
}

// Parses "c=<int>[,phase=<num>/<den>][,mag=<num>/<den>]".
inline TameCharacter parse_character(const std::string& spec, const ExtensionPtr& ext) {
  long c = 0;
  bool have_c = false;
  Rational phase(0), mag(0);
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("character spec: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    if (key == "c") {
      try {
        c = std::stol(val);
      } catch (...) {
        throw std::invalid_argument("character spec: bad integer '" + val + "'");
      }
      have_c = true;
    } else if (key == "phase") {
      phase = parse_rational(val);
    } else if (key == "mag") {
      mag = parse_rational(val);
    } else {
      throw std::invalid_argument("character spec: unknown key '" + key + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (!have_c) throw std::invalid_argument("character spec: missing c");
  return make_character(ext, c, phase, mag);
}

// Parses a ';'-separated tuple of character specs; errors carry the
// 1-based position of the offending entry.
inline std::vector<TameCharacter> parse_character_list(const std::string& spec,
                                                       const ExtensionPtr& ext) {
  std::vector<TameCharacter> out;
  size_t pos = 0;
  int index = 1;
  while (true) {
    size_t semi = spec.find(';', pos);
    std::string item = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    try {
      out.push_back(parse_character(item, ext));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("character #" + std::to_string(index) + ": " + e.what());
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
    ++index;
  }
  return out;
}

}  // namespace tamedist
