#include <catch2/catch_amalgamated.hpp>

#include "tamedist/weyl.hpp"

using namespace tamedist;

// Independent Bruhat-order oracle: the sorted-prefix (dot/tableau) criterion.
// v <= w iff for each k the ascending sort of v[0..k] dominates entrywise
// the ascending sort of w[0..k] from below.
static bool bruhat_leq_oracle(const Perm& v, const Perm& w) {
  int n = static_cast<int>(v.size());
  std::vector<int> pv, pw;
  for (int k = 0; k < n; ++k) {
    pv.push_back(v[k]);
    pw.push_back(w[k]);
    std::vector<int> sv = pv, sw = pw;
    std::sort(sv.begin(), sv.end());
    std::sort(sw.begin(), sw.end());
    for (size_t i = 0; i < sv.size(); ++i)
      if (sv[i] > sw[i]) return false;
  }
  return true;
}

TEST_CASE("permutation basics") {
  Perm w = {2, 0, 1};
  REQUIRE(perm_compose(perm_inverse(w), w) == perm_identity(3));
  REQUIRE(perm_compose(w, perm_inverse(w)) == perm_identity(3));
  REQUIRE(perm_length(perm_identity(4)) == 0);
  REQUIRE(perm_length(Perm{3, 2, 1, 0}) == 6);

  // compose acts as (a o b)(i) = a(b(i))
  Perm a = {1, 0, 2}, b = {0, 2, 1};
  Perm c = perm_compose(a, b);
  for (int i = 0; i < 3; ++i) REQUIRE(c[i] == a[b[i]]);
}

TEST_CASE("involutions match the counting recurrence") {
  // I(n) = I(n-1) + (n-1) I(n-2)
  for (int n = 1; n <= 6; ++n) {
    auto inv = involutions(n);
    REQUIRE(static_cast<long>(inv.size()) == involution_count_recurrence(n));
    for (const auto& w : inv) REQUIRE(perm_is_involution(w));
  }
  REQUIRE(involution_count_recurrence(1) == 1);
  REQUIRE(involution_count_recurrence(2) == 2);
  REQUIRE(involution_count_recurrence(3) == 4);
  REQUIRE(involution_count_recurrence(4) == 10);
  REQUIRE(involution_count_recurrence(5) == 26);
}

TEST_CASE("reduced words") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& w : all_permutations(n)) {
      auto word = reduced_word(w);
      REQUIRE(static_cast<int>(word.size()) == perm_length(w));
      // multiply the word back out: w = s_{j1} s_{j2} ... applied to identity
      Perm prod = perm_identity(n);
      for (int j : word) {
        Perm s = perm_identity(n);
        std::swap(s[j], s[j + 1]);
        prod = perm_compose(prod, s);
      }
      REQUIRE(prod == w);
    }
  }
}

TEST_CASE("bruhat order agrees with the sorted-prefix oracle") {
  for (int n = 2; n <= 4; ++n) {
    auto perms = all_permutations(n);
    for (const auto& w : perms) {
      auto down = bruhat_down_set(w);
      for (const auto& v : perms) {
        bool mine = down.count(v) > 0;
        REQUIRE(mine == bruhat_leq_oracle(v, w));
        REQUIRE(bruhat_leq(v, w) == mine);
      }
    }
  }
}

TEST_CASE("bruhat order sanity") {
  // identity below everything; nothing strictly above the longest element
  Perm id = perm_identity(4), w0 = {3, 2, 1, 0};
  for (const auto& w : all_permutations(4)) {
    REQUIRE(bruhat_leq(id, w));
    REQUIRE(bruhat_leq(w, w0));
  }
  REQUIRE(bruhat_down_set(w0).size() == 24);
}

TEST_CASE("cell order is downward closed") {
  for (int n = 1; n <= 5; ++n) {
    auto cells = cell_order(n);
    REQUIRE(cells.front() == perm_identity(n));
    // ascending length, lex within a length
    for (size_t i = 0; i + 1 < cells.size(); ++i) {
      int li = perm_length(cells[i]), lj = perm_length(cells[i + 1]);
      REQUIRE(li <= lj);
      if (li == lj) REQUIRE(cells[i] < cells[i + 1]);
    }
    REQUIRE_FALSE(cell_order_violation(n).has_value());
  }
  REQUIRE_THROWS_AS(cell_order(7), std::invalid_argument);
}
