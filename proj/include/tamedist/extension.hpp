#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "finite_field.hpp"

namespace tamedist {

enum class RamKind { Unramified, RamifiedD };

// Unit residue class, tracked by discrete log with respect to the fixed
// generator of the residue field of K, plus a zero marker.
struct ResidueElement {
  long dlog = 0;
  bool is_zero = false;
};

// Tame elements pi^v * u, with u a residue unit written as a dlog. One type
// per side of the extension so valuations cannot be mixed up silently.
struct TameKElement {
  long v = 0;
  long unit_dlog = 0;
};
struct TameFElement {
  long v = 0;
  long unit_dlog = 0;
};

// A quadratic extension K/F of p-adic fields with odd residue
// characteristic, carried by its residue data. F has residue field of size
// q = p^f. Two kinds:
//
//  - Unramified: K has residue field F_{q^2}; the Galois action is the
//    residue Frobenius x -> x^q and a uniformizer of F stays one for K.
//  - RamifiedD(u0): K = F(sqrt(d)) with d = p * t where t is the residue
//    Teichmueller unit of dlog u0. The residue fields agree and the Galois
//    action negates the uniformizer sqrt(d).
//
// The generator g of the residue field of K is fixed deterministically by
// the field construction, so discrete logs mean the same thing in every
// run.
struct ExtensionData {
  int p = 0;
  int f = 1;
  RamKind kind = RamKind::Unramified;
  long u0 = 0;  // ramified only; must satisfy 0 <= u0 < q-1
  long q = 0;   // residue size of F
  long q_K = 0; // residue size of K
  std::shared_ptr<const Fq> kres;  // residue field of K
  long g = 0;   // generator of kres^*

  long units_order() const { return q_K - 1; }
  long f_units_order() const { return q - 1; }

  // Ramification index of K over F (1 or 2).
  int e() const { return kind == RamKind::Unramified ? 1 : 2; }

  std::string describe() const {
    std::string s = kind == RamKind::Unramified ? "unram:p=" : "ram:p=";
    s += std::to_string(p);
    if (kind == RamKind::RamifiedD) s += ",u0=" + std::to_string(u0);
    s += ",f=" + std::to_string(f);
    return s;
  }
};

using ExtensionPtr = std::shared_ptr<const ExtensionData>;

inline bool same_extension(const ExtensionPtr& a, const ExtensionPtr& b) {
  return a->p == b->p && a->f == b->f && a->kind == b->kind && a->u0 == b->u0;
}

inline ExtensionPtr make_unramified(int p, int f = 1) {
  if (p == 2) throw std::invalid_argument("even residue characteristic is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (f < 1) throw std::invalid_argument("f must be >= 1");
  auto ext = std::make_shared<ExtensionData>();
  ext->p = p;
  ext->f = f;
  ext->kind = RamKind::Unramified;
  ext->kres = std::make_shared<Fq>(p, 2 * f);
  ext->q = 1;
  for (int i = 0; i < f; ++i) ext->q *= p;
  ext->q_K = ext->q * ext->q;
  ext->g = ext->kres->generator();
  // The residue field of F must sit inside that of K as the Frobenius-fixed
  // elements, i.e. the subgroup generated by g^{q+1}.
  for (long x = 1; x < ext->q_K; ++x) {
    bool fixed = ext->kres->pow(x, ext->q) == x;
    bool in_subgroup = ext->kres->dlog(x) % (ext->q + 1) == 0;
    if (fixed != in_subgroup)
      throw std::logic_error("unramified residue subfield mismatch");
  }
  return ext;
}

inline ExtensionPtr make_ramified(int p, long u0, int f = 1) {
  if (p == 2) throw std::invalid_argument("even residue characteristic is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (f < 1) throw std::invalid_argument("f must be >= 1");
  auto ext = std::make_shared<ExtensionData>();
  ext->p = p;
  ext->f = f;
  ext->kind = RamKind::RamifiedD;
  ext->kres = std::make_shared<Fq>(p, f);
  ext->q = ext->kres->q();
  ext->q_K = ext->q;
  ext->g = ext->kres->generator();
  if (u0 < 0 || u0 >= ext->q - 1)
    throw std::invalid_argument("u0 must lie in [0, q-2]");
  ext->u0 = u0;
  return ext;
}

// Galois action on residue classes: Frobenius x -> x^q when unramified,
// identity when ramified (the residue fields coincide).
inline ResidueElement frobenius(const ResidueElement& x, const ExtensionPtr& ext) {
  if (x.is_zero) return x;
  if (ext->kind == RamKind::RamifiedD) return x;
  long o = ext->units_order();
  return ResidueElement{(x.dlog * (ext->q % o)) % o, false};
}

// Galois action on tame elements of K. Unramified: the uniformizer of F is
// fixed and units are raised to the q-th power. Ramified: sigma(sqrt(d)) =
// -sqrt(d), so each power of the uniformizer contributes dlog(-1) = (q-1)/2.
inline TameKElement galois_tame(const TameKElement& x, const ExtensionPtr& ext) {
  long o = ext->units_order();
  if (ext->kind == RamKind::Unramified)
    return TameKElement{x.v, ((x.unit_dlog * (ext->q % o)) % o + o) % o};
  long k = x.unit_dlog + x.v * ((ext->q - 1) / 2);
  return TameKElement{x.v, ((k % o) + o) % o};
}

// Norm from K to F of a tame element. Unramified: N(p^v u) = p^{2v} N(u)
// and the residue norm sends g^k to g_F^k where g_F = g^{q+1} generates the
// residue field of F. Ramified: N(sqrt(d)^v u) = (-d)^v u^2, and -d = -p*t
// contributes valuation 1 and unit dlog (q-1)/2 + u0 per power.
inline TameFElement norm_tame(const TameKElement& x, const ExtensionPtr& ext) {
  long oF = ext->f_units_order();
  if (ext->kind == RamKind::Unramified) {
    long k = ((x.unit_dlog % oF) + oF) % oF;
    return TameFElement{2 * x.v, k};
  }
  long per_v = (oF / 2 + ext->u0) % oF;
  long k = ((x.v % oF) * per_v + 2 * x.unit_dlog) % oF;
  return TameFElement{x.v, ((k % oF) + oF) % oF};
}

// Embedding of a tame element of F into K. Unramified: same uniformizer,
// residue units g_F^k = g^{k(q+1)}. Ramified: p = sqrt(d)^2 * t^{-1}.
inline TameKElement embed_tame_F(const TameFElement& x, const ExtensionPtr& ext) {
  if (ext->kind == RamKind::Unramified) {
    long o = ext->units_order();
    long k = ((x.unit_dlog * (ext->q + 1)) % o + o) % o;
    return TameKElement{x.v, k};
  }
  long o = ext->units_order();
  long k = ((x.unit_dlog - x.v * ext->u0) % o + o) % o;
  return TameKElement{2 * x.v, k};
}

// Parses "unram:p=<prime>[,f=<int>]" or "ram:p=<prime>,u0=<int>[,f=<int>]".
inline ExtensionPtr parse_extension(const std::string& spec) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("extension spec '" + spec + "': missing ':'");
  std::string kind = spec.substr(0, colon);
  if (kind != "unram" && kind != "ram")
    throw std::invalid_argument("extension spec: unknown kind '" + kind + "'");
  long p = -1, u0 = -1, f = 1;
  std::string rest = spec.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("extension spec: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    long val;
    try {
      val = std::stol(item.substr(eq + 1));
    } catch (...) {
      throw std::invalid_argument("extension spec: bad integer in '" + item + "'");
    }
    if (key == "p") p = val;
    else if (key == "u0") u0 = val;
    else if (key == "f") f = val;
    else throw std::invalid_argument("extension spec: unknown key '" + key + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (p < 0) throw std::invalid_argument("extension spec: missing p");
  if (p % 2 == 0) throw std::invalid_argument("even residue characteristic is not supported");
  if (kind == "unram") {
    if (u0 >= 0) throw std::invalid_argument("extension spec: u0 is only for ram");
    return make_unramified(static_cast<int>(p), static_cast<int>(f));
  }
  if (u0 < 0) throw std::invalid_argument("extension spec: ram requires u0");
  return make_ramified(static_cast<int>(p), u0, static_cast<int>(f));
}

}  // namespace tamedist
