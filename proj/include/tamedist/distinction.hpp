#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "characters.hpp"

namespace tamedist {

// Ordered tuple of tame characters defining a principal series datum for
// GL(n, K), n = chars.size().
struct PrincipalSeriesDatum {
  std::vector<TameCharacter> chars;

  int n() const { return static_cast<int>(chars.size()); }
  const ExtensionPtr& ext() const { return chars.front().ext; }
};

inline PrincipalSeriesDatum make_datum(std::vector<TameCharacter> chars) {
  if (chars.empty()) throw std::invalid_argument("datum needs at least one character");
  for (size_t i = 1; i < chars.size(); ++i)
    require_same_extension(chars[0].ext, chars[i].ext);
  return PrincipalSeriesDatum{std::move(chars)};
}

inline std::string format_datum(const PrincipalSeriesDatum& d) {
  std::string s;
  for (int i = 0; i < d.n(); ++i) {
    if (i) s += ';';
    s += format_character(d.chars[i]);
  }
  return s;
}

// The induced representation is irreducible iff no quotient of two of the
// characters equals |.|_K or its inverse. Returns the offending 1-based
// (i, j) with chi_i / chi_j = |.|_K, if any.
inline std::optional<std::pair<int, int>> irreducibility_violation(
    const PrincipalSeriesDatum& d) {
  auto a1 = abs_K(d.ext());
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < d.n(); ++j)
      if (i != j && char_equal(mul(d.chars[i], inv(d.chars[j])), a1))
        return std::make_pair(i + 1, j + 1);
  return std::nullopt;
}

inline bool check_irreducible(const PrincipalSeriesDatum& d) {
  return !irreducibility_violation(d).has_value();
}

inline void require_irreducible(const PrincipalSeriesDatum& d) {
  if (auto bad = irreducibility_violation(d))
    throw std::invalid_argument(
        "reducible datum: the quotient of characters (" + std::to_string(bad->first) +
        ", " + std::to_string(bad->second) + ") is the absolute value character");
}

// Is the tuple fixed, as a multiset, by chi -> chi^{-sigma}?
inline bool sigma_selfdual(const PrincipalSeriesDatum& d) {
  std::vector<TameCharacter> a = d.chars, b;
  b.reserve(a.size());
  for (const auto& chi : a) b.push_back(galois_inv(chi));
  std::sort(a.begin(), a.end(), char_less);
  std::sort(b.begin(), b.end(), char_less);
  for (size_t i = 0; i < a.size(); ++i)
    if (!char_equal(a[i], b[i])) return false;
  return true;
}

// The central character is the product of the tuple; this asks whether it
// restricts trivially to F^*.
inline bool central_character_trivial_on_F(const PrincipalSeriesDatum& d) {
  auto prod = trivial_character(d.ext());
  for (const auto& chi : d.chars) prod = mul(prod, chi);
  return is_trivial_on_F(prod);
}

// Checks the distinction pattern on the tuple in its given order: the
// first 2r entries pair up adjacently as (chi, chi^{-sigma}) and every
// later entry restricts trivially to F^*. Returns the largest such r.
inline std::optional<int> literal_pattern_check(const PrincipalSeriesDatum& d) {
  int n = d.n();
  for (int r = n / 2; r >= 0; --r) {
    bool ok = true;
    for (int i = 0; ok && i < 2 * r; i += 2)
      ok = char_equal(d.chars[i + 1], galois_inv(d.chars[i]));
    for (int i = 2 * r; ok && i < n; ++i)
      ok = is_trivial_on_F(d.chars[i]);
    if (ok) return r;
  }
  return std::nullopt;
}

// Witness for a distinction verdict: a partition of {1..n} into pairs
// (i, j) with chi_j = chi_i^{-sigma} and singletons trivial on F^*.
struct DistinctionCertificate {
  std::vector<std::pair<int, int>> pairs;  // 1-based positions
  std::vector<int> singletons;             // 1-based positions
};

inline bool validate_certificate(const PrincipalSeriesDatum& d,
                                 const DistinctionCertificate& cert) {
  std::vector<int> seen(d.n(), 0);
  for (auto [i, j] : cert.pairs) {
    if (i < 1 || i > d.n() || j < 1 || j > d.n() || i == j) return false;
    ++seen[i - 1];
    ++seen[j - 1];
    if (!char_equal(d.chars[j - 1], galois_inv(d.chars[i - 1]))) return false;
  }
  for (int i : cert.singletons) {
    if (i < 1 || i > d.n()) return false;
    ++seen[i - 1];
    if (!is_trivial_on_F(d.chars[i - 1])) return false;
  }
  for (int s : seen)
    if (s != 1) return false;
  return true;
}

struct DistinctionVerdict {
  bool distinguished = false;
  int r = 0;  // number of certificate pairs when distinguished
  std::optional<DistinctionCertificate> certificate;
};

// Decides distinction of the (irreducible) principal series datum: some
// reordering must exhibit the pattern checked by literal_pattern_check.
//
// The decision runs on multiplicity classes. Writing p(chi) = chi^{-sigma},
// a class can only pair into its partner class, because a pair fixes the
// values of both members. Self-partnered classes (chi = chi^{-sigma}) pair
// internally and may leave one singleton, which must restrict trivially;
// cross-partnered classes must match in multiplicity exactly, since their
// members never restrict trivially on F^* and so cannot be singletons.
inline DistinctionVerdict is_distinguished(const PrincipalSeriesDatum& d) {
  require_irreducible(d);
  int n = d.n();

  std::vector<int> class_of(n, -1);
  std::vector<std::vector<int>> members;  // per class, ascending positions
  for (int i = 0; i < n; ++i) {
    for (size_t cid = 0; cid < members.size(); ++cid)
      if (char_equal(d.chars[members[cid][0]], d.chars[i])) {
        class_of[i] = static_cast<int>(cid);
        break;
      }
    if (class_of[i] < 0) {
      class_of[i] = static_cast<int>(members.size());
      members.push_back({});
    }
    members[class_of[i]].push_back(i);
  }

  auto partner_of = [&](int cid) -> int {
    auto want = galois_inv(d.chars[members[cid][0]]);
    for (size_t other = 0; other < members.size(); ++other)
      if (char_equal(d.chars[members[other][0]], want)) return static_cast<int>(other);
    return -1;
  };

  DistinctionCertificate cert;
  std::vector<bool> done(members.size(), false);
  for (size_t cid = 0; cid < members.size(); ++cid) {
    if (done[cid]) continue;
    int partner = partner_of(static_cast<int>(cid));
    const auto& mine = members[cid];
    if (partner == static_cast<int>(cid)) {
      for (size_t k = 0; k + 1 < mine.size(); k += 2)
        cert.pairs.emplace_back(mine[k] + 1, mine[k + 1] + 1);
      if (mine.size() % 2 == 1) {
        if (!is_trivial_on_F(d.chars[mine.back()])) return DistinctionVerdict{};
        cert.singletons.push_back(mine.back() + 1);
      }
      done[cid] = true;
      continue;
    }
    if (partner < 0) return DistinctionVerdict{};
    const auto& theirs = members[partner];
    if (mine.size() != theirs.size()) return DistinctionVerdict{};
    for (size_t k = 0; k < mine.size(); ++k)
      cert.pairs.emplace_back(mine[k] + 1, theirs[k] + 1);
    done[cid] = done[partner] = true;
  }

  DistinctionVerdict v;
  v.distinguished = true;
  v.r = static_cast<int>(cert.pairs.size());
  v.certificate = std::move(cert);
  return v;
}

// Independent exponential-time decision by exhausting all ways to split the
// positions into pairs and singletons. Usable up to n = 10.
inline bool brute_force_distinguished(const PrincipalSeriesDatum& d) {
  require_irreducible(d);
  int n = d.n();
  if (n > 10) throw std::invalid_argument("brute force capped at n = 10");
  std::map<unsigned, bool> memo;
  auto solve = [&](auto&& self, unsigned mask) -> bool {
    if (mask == 0) return true;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int i = 0;
    while (!(mask & (1u << i))) ++i;
    bool ok = false;
    if (is_trivial_on_F(d.chars[i])) ok = self(self, mask & ~(1u << i));
    for (int j = i + 1; !ok && j < n; ++j)
      if ((mask & (1u << j)) && char_equal(d.chars[j], galois_inv(d.chars[i])))
        ok = self(self, mask & ~(1u << i) & ~(1u << j));
    memo[mask] = ok;
    return ok;
  };
  return solve(solve, (1u << n) - 1);
}

// Distinction relative to the norm residue character eta o det: twist the
// whole tuple by the inverse of an extension of eta and decide distinction
// of the twist. The verdict does not depend on which extension is chosen,
// because two extensions differ by a character trivial on F^*.
inline DistinctionVerdict is_eta_distinguished(const PrincipalSeriesDatum& d) {
  auto lift = extend_from_F(eta_character(d.ext()));
  std::vector<TameCharacter> twisted;
  twisted.reserve(d.chars.size());
  for (const auto& chi : d.chars) twisted.push_back(mul(chi, inv(lift)));
  return is_distinguished(make_datum(std::move(twisted)));
}

struct CounterexampleItem {
  PrincipalSeriesDatum datum;
  bool selfdual_ok = false;        // sigma-self-dual as a multiset
  bool central_ok = false;         // central character trivial on F^*
  bool not_distinguished = false;  // is_distinguished says no
  bool not_eta_distinguished = false;

  bool verified() const {
    return selfdual_ok && central_ok && not_distinguished && not_eta_distinguished;
  }
};

struct CounterexampleSearchResult {
  std::vector<CounterexampleItem> items;
  long candidates_examined = 0;
  std::string diagnostic;  // set when the search comes back empty
};

// Searches for sigma-self-dual data with central character trivial on F^*
// that are neither distinguished nor eta-distinguished. The enumeration is
// deterministic: two characters restricting to eta (indices i1 < i2 in the
// family order) plus an ascending combination of n-2 distinct characters
// trivial on F^*. Every emitted item is re-verified property by property.
inline CounterexampleSearchResult jacquet_counterexample_search(const ExtensionPtr& ext,
                                                                int n, int budget = 10) {
  if (n < 3)
    throw std::invalid_argument(
        "counterexample search needs n >= 3: for smaller n these conditions force "
        "distinction");
  if (budget < 1) throw std::invalid_argument("budget must be positive");

  CounterexampleSearchResult res;
  auto eta_family = characters_restricting_to_eta(ext);
  auto triv_family = characters_trivial_on_F(ext);
  int e = static_cast<int>(eta_family.size());
  int t = static_cast<int>(triv_family.size());
  int need = n - 2;

  if (need > t) {
    res.diagnostic = "search space exhausted: needed " + std::to_string(need) +
                     " distinct characters trivial on F^*, but only " + std::to_string(t) +
                     " exist over " + ext->describe();
    return res;
  }

  std::vector<int> comb(need);
  for (int i1 = 0; i1 < e && static_cast<int>(res.items.size()) < budget; ++i1) {
    for (int i2 = i1 + 1; i2 < e && static_cast<int>(res.items.size()) < budget; ++i2) {
      for (int i = 0; i < need; ++i) comb[i] = i;
      while (static_cast<int>(res.items.size()) < budget) {
        std::vector<TameCharacter> chars = {eta_family[i1], eta_family[i2]};
        for (int i = 0; i < need; ++i) chars.push_back(triv_family[comb[i]]);
        auto datum = make_datum(std::move(chars));
        ++res.candidates_examined;
        if (check_irreducible(datum)) {
          CounterexampleItem item{datum, sigma_selfdual(datum),
                                  central_character_trivial_on_F(datum),
                                  !is_distinguished(datum).distinguished,
                                  !is_eta_distinguished(datum).distinguished};
          if (item.verified()) res.items.push_back(std::move(item));
        }
        // next ascending combination
        int i = need - 1;
        while (i >= 0 && comb[i] == t - need + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < need; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }

  if (res.items.empty())
    res.diagnostic = "no verified counterexample among " +
                     std::to_string(res.candidates_examined) + " candidates over " +
                     ext->describe();
  return res;
}

}  // namespace tamedist
