#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace tamedist {

// Permutations in one-line notation, 0-based: w[i] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm perm_inverse(const Perm& w) {
  Perm v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[w[i]] = static_cast<int>(i);
  return v;
}

// Coxeter length = inversion count.
inline int perm_length(const Perm& w) {
  int len = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++len;
  return len;
}

inline bool perm_is_involution(const Perm& w) {
  for (size_t i = 0; i < w.size(); ++i)
    if (w[w[i]] != static_cast<int>(i)) return false;
  return true;
}

inline std::vector<Perm> all_permutations(int n) {
  std::vector<Perm> out;
  Perm w = perm_identity(n);
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

inline std::vector<Perm> involutions(int n) {
  std::vector<Perm> out;
  for (const auto& w : all_permutations(n))
    if (perm_is_involution(w)) out.push_back(w);
  return out;
}

// Involution counter by the classical recurrence, kept separate from the
// enumeration so the two can cross-check each other.
inline long involution_count_recurrence(int n) {
  if (n <= 1) return 1;
  long a = 1, b = 1;  // I(0), I(1)
  for (int k = 2; k <= n; ++k) {
    long c = b + (k - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

// One reduced word for w in the adjacent transpositions s_0..s_{n-2}:
// repeatedly right-multiply by the first descent until the identity remains.
inline std::vector<int> reduced_word(const Perm& w) {
  Perm v = w;
  std::vector<int> word;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (size_t j = 0; j + 1 < v.size(); ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        word.push_back(static_cast<int>(j));
        progressed = true;
        break;
      }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

// The full lower Bruhat interval {v : v <= w} by the subword criterion:
// walk one reduced word of w and extend each partial element only when the
// letter increases its length. Every v <= w has a reduced expression that
// is a subword, so this collects exactly the interval.
inline std::set<Perm> bruhat_down_set(const Perm& w) {
  std::set<Perm> reach = {perm_identity(static_cast<int>(w.size()))};
  for (int j : reduced_word(w)) {
    std::set<Perm> grown = reach;
    for (const auto& v : reach) {
      if (v[j] < v[j + 1]) {
        Perm u = v;
        std::swap(u[j], u[j + 1]);
        grown.insert(u);
      }
    }
    reach.swap(grown);
  }
  return reach;
}

inline bool bruhat_leq(const Perm& v, const Perm& w) {
  if (v.size() != w.size()) throw std::invalid_argument("bruhat_leq: size mismatch");
  return bruhat_down_set(w).count(v) > 0;
}

// All of S_n sorted by ascending length with lexicographic tie-break: the
// cell enumeration order in which every lower cell precedes a higher one.
inline std::vector<Perm> cell_order(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("cell_order supports 1 <= n <= 6");
  auto perms = all_permutations(n);
  std::stable_sort(perms.begin(), perms.end(), [](const Perm& a, const Perm& b) {
    int la = perm_length(a), lb = perm_length(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  return perms;
}

// Verifies the downward-closure property of the cell order: everything
// below w_i in Bruhat order appears strictly earlier. Returns the first
// violating index pair, if any.
inline std::optional<std::pair<int, int>> cell_order_violation(int n) {
  auto cells = cell_order(n);
  std::set<Perm> seen;
  for (size_t i = 0; i < cells.size(); ++i) {
    for (const auto& v : bruhat_down_set(cells[i]))
      if (v != cells[i] && seen.count(v) == 0) {
        // locate v's position for the report
        for (size_t j = i + 1; j < cells.size(); ++j)
          if (cells[j] == v) return std::make_pair(static_cast<int>(i), static_cast<int>(j));
        return std::make_pair(static_cast<int>(i), -1);
      }
    seen.insert(cells[i]);
  }
  return std::nullopt;
}

}  // namespace tamedist
