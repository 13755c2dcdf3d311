// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Each block is self-contained and states its tolerance and raw numbers.

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tamedist/characters.hpp"
#include "tamedist/cli.hpp"
#include "tamedist/cosets.hpp"
#include "tamedist/distinction.hpp"
#include "tamedist/extension.hpp"
#include "tamedist/gamma.hpp"
#include "tamedist/report.hpp"
#include "tamedist/rng.hpp"
#include "tamedist/weyl.hpp"

using namespace tamedist;

namespace {

int failures = 0;

void line(int num, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", num, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

void guarded(int num, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    line(num, name, pass, detail);
  } catch (const std::exception& e) {
    line(num, name, false, std::string("exception: ") + e.what());
  }
}

// random tame character with grid phases and occasional nonzero magnitude
TameCharacter random_character(Rng& rng, const ExtensionPtr& ext) {
  long o = ext->units_order();
  static const std::vector<long> dens = {1, 2, 3, 4, 6, 8};
  long den = rng.pick(dens);
  Rational phase(rng.pick_long(0, den - 1), den);
  static const std::vector<Rational> mags = {Rational(0), Rational(0), Rational(0),
                                             Rational(1, 2), Rational(-1, 2)};
  return make_character(ext, rng.pick_long(0, o - 1), phase, rng.pick(mags));
}

// random irreducible datum mixing partner pairs, trivial-on-F entries and
// noise, as in the module tests
PrincipalSeriesDatum random_datum(Rng& rng, const ExtensionPtr& ext, int n) {
  while (true) {
    std::vector<TameCharacter> chars;
    auto triv = characters_trivial_on_F(ext);
    while (static_cast<int>(chars.size()) < n) {
      switch (rng.below(3)) {
        case 0: {
          if (static_cast<int>(chars.size()) + 2 > n) break;
          auto chi = random_character(rng, ext);
          chars.push_back(chi);
          chars.push_back(galois_inv(chi));
          break;
        }
        case 1:
          chars.push_back(rng.pick(triv));
          break;
        default:
          chars.push_back(random_character(rng, ext));
      }
    }
    for (size_t i = chars.size(); i > 1; --i)
      std::swap(chars[i - 1], chars[rng.below(i)]);
    auto d = make_datum(std::move(chars));
    if (check_irreducible(d)) return d;
  }
}

std::pair<bool, std::string> criterion_orbits() {
  struct Case {
    int n, q;
    long orbits;
  };
  const std::vector<Case> cases = {{1, 3, 1}, {2, 3, 2}, {2, 5, 2}, {3, 3, 4}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    Fq2 F(c.q);
    auto dec = orbit_decomposition(F, c.n);
    unsigned long long formula = s_cardinality_formula(c.n, c.q);
    unsigned long long covered = 0;
    for (const auto& orb : dec.orbits) covered += orb.elements.size();
    bool here = static_cast<long>(dec.orbits.size()) == c.orbits &&
                involution_count_recurrence(c.n) == c.orbits && dec.total == formula &&
                covered == formula;
    ok = ok && here;
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(c.n) + ",q=" + std::to_string(c.q) + ": " +
              std::to_string(dec.orbits.size()) + " orbits, " + std::to_string(covered) +
              " elements";
  }
  // the decomposition itself verifies exactly one involution per orbit
  return {ok, detail};
}

std::pair<bool, std::string> criterion_reduction() {
  Rng rng(1000003);
  int total = 0, exact = 0;
  for (int n : {2, 3, 4})
    for (int q : {3, 5}) {
      Fq2 F(q);
      for (int trial = 0; trial < 1000; ++trial) {
        FiniteMatrix s = s_map(F, random_invertible(F, n, rng));
        ++total;
        ReductionResult red = reduce_to_involution(F, s);
        if (perm_is_involution(red.w) &&
            twisted_act(F, red.y, permutation_matrix(F, red.w)) == s)
          ++exact;
      }
    }
  return {exact == total,
          std::to_string(exact) + "/" + std::to_string(total) +
              " random s = sigma(g) g^{-1} reduced to s = y w sigma(y)^{-1} exactly, n in {2,3,4}, q in {3,5}"};
}

std::pair<bool, std::string> criterion_coverage() {
  Fq2 F(3);
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 3; ++n) {
    auto dec = orbit_decomposition(F, n);
    auto reps = u_r_w_representatives(F, n);
    std::set<int> hit;
    for (const auto& rep : reps) hit.insert(dec.orbit_of.at(mat_key(F, s_map(F, rep.g))));
    ok = ok && hit.size() == dec.orbits.size();
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(n) + ": " + std::to_string(hit.size()) + "/" +
              std::to_string(dec.orbits.size()) + " orbits hit";
  }
  return {ok, detail + ", q=3"};
}

std::pair<bool, std::string> criterion_cells() {
  bool ok = true;
  std::string detail;
  for (int n : {3, 4, 5}) {
    auto violation = cell_order_violation(n);
    ok = ok && !violation.has_value();
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(n) + ": " +
              (violation ? "violation at cell " + std::to_string(violation->first) : "closed");
  }
  return {ok, detail + " (subword criterion)"};
}

std::pair<bool, std::string> criterion_matching() {
  Rng rng(424243);
  long agree = 0, total = 0, perm_ok = 0;
  for (int n = 2; n <= 6; ++n)
    for (int p : {3, 5})
      for (int kind = 0; kind < 2; ++kind) {
        ExtensionPtr ext = kind == 0 ? make_unramified(p) : make_ramified(p, 0);
        for (int trial = 0; trial < 1000; ++trial) {
          auto d = random_datum(rng, ext, n);
          bool counting = is_distinguished(d).distinguished;
          bool brute = brute_force_distinguished(d);
          ++total;
          if (counting == brute) ++agree;
          // permutation invariance on the same corpus
          std::vector<TameCharacter> shuffled = d.chars;
          for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
          if (is_distinguished(make_datum(shuffled)).distinguished == counting) ++perm_ok;
        }
      }
  return {agree == total && perm_ok == total,
          std::to_string(agree) + "/" + std::to_string(total) +
              " oracle agreements and " + std::to_string(perm_ok) + "/" + std::to_string(total) +
              " permutation-invariant verdicts, n in 2..6, q in {3,5}, both kinds"};
}

std::pair<bool, std::string> criterion_selfdual() {
  ExtensionPtr ext = make_unramified(3);
  auto fam = unitary_family(ext);
  long violations = 0, pairs = 0, distinguished = 0;
  for (const auto& a : fam)
    for (const auto& b : fam) {
      auto d = make_datum({a, b});
      if (!check_irreducible(d)) continue;
      ++pairs;
      if (!is_distinguished(d).distinguished) continue;
      ++distinguished;
      if (!sigma_selfdual(d)) ++violations;
    }
  return {violations == 0 && distinguished > 0,
          std::to_string(violations) + " violations among " + std::to_string(distinguished) +
              " distinguished of " + std::to_string(pairs) + " exhaustive unitary pairs, n=2, q=3"};
}

std::pair<bool, std::string> criterion_counterexample() {
  ExtensionPtr ext = make_unramified(3);
  bool ok = true;
  std::string detail;
  for (int n : {3, 4, 5}) {
    auto res = jacquet_counterexample_search(ext, n, 100000);
    bool here = !res.items.empty();
    for (const auto& item : res.items) here = here && item.verified();
    if (n == 3) {
      bool worked = false;
      for (const auto& item : res.items)
        if (format_datum(item.datum) == "c=0,phase=1/2;c=4,phase=1/2;c=0") worked = true;
      here = here && worked;
    }
    ok = ok && here;
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(n) + ": " + std::to_string(res.items.size()) +
              " verified items";
  }
  return {ok, detail + ", unram p=3, worked n=3 instance present"};
}

std::pair<bool, std::string> criterion_gamma() {
  bool ok = true;
  double worst_duality = 0.0, worst_gauss = 0.0, worst_product = 0.0;
  long agreements = 0, mus = 0;
  double control = 0.0;
  for (int p : {3, 5}) {
    ExtensionPtr ext = make_unramified(p);
    AdditiveCharacter psi(ext);
    long qk = ext->q_K;
    // (a) duality for all unitary chi at s in {1/2, 1/3}
    for (const auto& chi : unitary_family(ext))
      for (const Rational& s : {Rational(1, 2), Rational(1, 3)}) {
        if (gamma_has_pole(chi, s) || gamma_has_pole(inv(chi), Rational(1) - s)) continue;
        Complex prod = gamma_factor(chi, psi, s).value *
                       gamma_factor(inv(chi), psi.inverse(), Rational(1) - s).value;
        worst_duality = std::max(worst_duality, std::abs(prod - Complex(1.0, 0.0)));
      }
    // (b) Gauss sum magnitude for all c != 0
    for (long c = 1; c < qk - 1; ++c) {
      double mag2 = std::norm(gauss_sum(c, psi));
      worst_gauss = std::max(worst_gauss, std::abs(mag2 - static_cast<double>(qk)));
    }
    // (c) products over all tame unitary mu x all chi trivial on F*
    auto trivF = characters_trivial_on_F(ext);
    for (const auto& mu : unitary_family(ext)) {
      for (const auto& chi : trivF) {
        Complex prod = gl2_gamma_product(mu, chi, psi);
        worst_product = std::max(worst_product, std::abs(prod - Complex(1.0, 0.0)));
      }
      // (d) the gamma sweep agrees with the matcher for every mu
      ++mus;
      if (gl2_distinction_by_gamma(mu, psi).agrees) ++agreements;
    }
    // negative control: some chi with nontrivial restriction breaks the identity
    double found = 0.0;
    for (const auto& chi : unitary_family(ext)) {
      if (is_trivial_on_F(chi) || equals_eta_on_F(chi)) continue;
      double dev = std::abs(gl2_gamma_product(trivial_character(ext), chi, psi, false) -
                            Complex(1.0, 0.0));
      found = std::max(found, dev);
      if (found > 1e-3) break;
    }
    if (found <= 1e-3) ok = false;
    control = std::max(control, found);
  }
  ok = ok && worst_duality <= 1e-9 && worst_gauss <= 1e-9 && worst_product <= 1e-9 &&
       agreements == mus;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "duality %.2e, |G|^2-q_K %.2e, products %.2e (tol 1e-9); %ld/%ld verdicts agree; "
                "negative control deviation %.3f > 1e-3",
                worst_duality, worst_gauss, worst_product, agreements, mus, control);
  return {ok, std::string(buf)};
}

std::pair<bool, std::string> criterion_determinism() {
  const std::vector<std::vector<std::string>> suite = {
      {"orbits", "--n", "2", "--q", "3", "--full-enum", "--random-checks", "200", "--seed", "42",
       "--format", "records"},
      {"orbits", "--n", "3", "--q", "3", "--full-enum", "--random-checks", "100", "--seed", "42",
       "--format", "records"},
      {"distinguish", "--ext", "unram:p=3", "--chars", "c=0,phase=1/2;c=4,phase=1/2;c=0",
       "--format", "records"},
      {"counterexample", "--n", "3", "--ext", "unram:p=3", "--format", "records"},
      {"gamma", "--ext", "unram:p=5", "--mu", "c=2", "--format", "records"},
      {"cells", "--n", "5", "--format", "records"},
  };
  auto run_all = [&suite]() {
    std::string out;
    for (const auto& args : suite) {
      CliResult res = run_cli(args);
      out += std::to_string(res.code) + "\n" + res.output;
    }
    return out;
  };
  std::string first = run_all();
  std::string second = run_all();
  return {first == second && !first.empty(),
          "two runs of " + std::to_string(suite.size()) + " seeded commands: " +
              (first == second ? "byte-identical" : "DIFFER") + ", " +
              std::to_string(first.size()) + " bytes"};
}

}  // namespace

int main() {
  guarded(1, "orbit decomposition matches involution counts", criterion_orbits);
  guarded(2, "constructive reduction is exact", criterion_reduction);
  guarded(3, "block representatives cover every orbit", criterion_coverage);
  guarded(4, "cell order is downward closed", criterion_cells);
  guarded(5, "distinction matcher equals the brute-force oracle", criterion_matching);
  guarded(6, "distinguished implies sigma-self-dual", criterion_selfdual);
  guarded(7, "counterexample search verifies items for n=3,4,5", criterion_counterexample);
  guarded(8, "gamma identities hold and detect distinction", criterion_gamma);
  guarded(9, "reports are byte-stable under reruns", criterion_determinism);
  if (failures) {
    std::printf("%d criteria failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
