#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tamedist/characters.hpp"
#include "tamedist/cosets.hpp"
#include "tamedist/distinction.hpp"
#include "tamedist/extension.hpp"
#include "tamedist/gamma.hpp"
#include "tamedist/report.hpp"
#include "tamedist/rng.hpp"
#include "tamedist/weyl.hpp"

namespace tamedist {

struct CliResult {
  int code = 0;  // 0 all checks pass, 1 mathematical check failed, 2 usage error
  std::string output;
};

namespace cli_detail {

inline std::string perm_str(const Perm& w) {
  std::string s;
  for (int v : w) s += std::to_string(v);
  return s;
}

inline std::string certificate_pairs_str(const DistinctionCertificate& cert) {
  if (cert.pairs.empty()) return "(none)";
  std::string s;
  for (const auto& pq : cert.pairs) {
    if (!s.empty()) s += " ";
    s += "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
  }
  return s;
}

inline std::string certificate_singletons_str(const DistinctionCertificate& cert) {
  if (cert.singletons.empty()) return "(none)";
  std::string s;
  for (int i : cert.singletons) {
    if (!s.empty()) s += " ";
    s += std::to_string(i);
  }
  return s;
}

inline void run_distinguish(Report& rep, const std::string& ext_spec, const std::string& chars_spec) {
  ExtensionPtr ext = parse_extension(ext_spec);
  auto chars = parse_character_list(chars_spec, ext);
  auto datum = make_datum(chars);
  require_irreducible(datum);

  rep.input("ext", ext->describe());
  rep.input("chars", chars_spec);
  rep.result("n", datum.n());
  for (int i = 0; i < datum.n(); ++i)
    rep.result("char." + std::to_string(i + 1), format_character(datum.chars[i]));

  DistinctionVerdict verdict = is_distinguished(datum);
  bool selfdual = sigma_selfdual(datum);
  bool central = central_character_trivial_on_F(datum);
  bool eta = is_eta_distinguished(datum).distinguished;

  rep.result("distinguished", verdict.distinguished);
  if (verdict.distinguished) {
    rep.result("r", verdict.r);
    rep.result("certificate.pairs", certificate_pairs_str(*verdict.certificate));
    rep.result("certificate.singletons", certificate_singletons_str(*verdict.certificate));
  }
  rep.result("sigma_selfdual", selfdual);
  rep.result("central_trivial_on_F", central);
  rep.result("eta_distinguished", eta);

  if (verdict.distinguished)
    rep.check("certificate_valid", validate_certificate(datum, *verdict.certificate),
              "pairing partitions the positions and satisfies the partner equations");
  if (datum.n() <= 8)
    rep.check("brute_force_agreement", brute_force_distinguished(datum) == verdict.distinguished,
              "exhaustive matcher reproduces the verdict");
  rep.check("selfdual_when_distinguished", !verdict.distinguished || selfdual,
            "distinguished data must be sigma-self-dual");
}

inline void run_counterexample(Report& rep, const std::string& ext_spec, int n, int budget) {
  ExtensionPtr ext = parse_extension(ext_spec);
  auto res = jacquet_counterexample_search(ext, n, budget);

  rep.input("ext", ext->describe());
  rep.input("n", std::to_string(n));
  rep.input("budget", std::to_string(budget));
  rep.result("family_eta_restricting", static_cast<long long>(characters_restricting_to_eta(ext).size()));
  rep.result("family_trivial_on_F", static_cast<long long>(characters_trivial_on_F(ext).size()));
  rep.result("candidates_examined", static_cast<long long>(res.candidates_examined));
  rep.result("items", static_cast<long long>(res.items.size()));
  for (size_t i = 0; i < res.items.size(); ++i) {
    const auto& item = res.items[i];
    std::string p = "item." + std::to_string(i + 1);
    rep.result(p + ".chars", format_datum(item.datum));
    rep.result(p + ".sigma_selfdual", item.selfdual_ok);
    rep.result(p + ".central_trivial_on_F", item.central_ok);
    rep.result(p + ".distinguished", !item.not_distinguished);
    rep.result(p + ".eta_distinguished", !item.not_eta_distinguished);
  }
  if (!res.diagnostic.empty()) rep.result("diagnostic", res.diagnostic);

  bool all_verified = true;
  for (const auto& item : res.items) all_verified = all_verified && item.verified();
  rep.check("items_verified", all_verified, "every emitted tuple passes all four properties");

  // round trip: the printed tuples reparse and still verify
  bool round_trip = true;
  for (const auto& item : res.items) {
    auto reparsed = make_datum(parse_character_list(format_datum(item.datum), ext));
    bool ok = sigma_selfdual(reparsed) && central_character_trivial_on_F(reparsed) &&
              !is_distinguished(reparsed).distinguished &&
              !is_eta_distinguished(reparsed).distinguished;
    round_trip = round_trip && ok;
  }
  rep.check("round_trip_reverified", round_trip,
            "serialized tuples reparse and pass re-verification");
  rep.check("found_or_explained", !res.items.empty() || !res.diagnostic.empty(),
            "search yields a verified tuple or a concrete exhaustion diagnostic");
}

inline void run_gamma(Report& rep, const std::string& ext_spec, const std::string& mu_spec) {
  ExtensionPtr ext = parse_extension(ext_spec);
  AdditiveCharacter psi(ext);
  TameCharacter mu = parse_character(mu_spec, ext);

  rep.input("ext", ext->describe());
  rep.input("mu", format_character(mu));
  rep.result("s", "1/2");
  auto report = gl2_distinction_by_gamma(mu, psi);
  rep.result("sweep_size", static_cast<long long>(report.sweep_size));
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    std::string p = "row." + std::to_string(i + 1);
    rep.result(p + ".chi", format_character(row.chi));
    rep.result(p + ".product_re", row.product.real());
    rep.result(p + ".product_im", row.product.imag());
    rep.result(p + ".deviation", row.deviation);
    if (row.excluded) rep.result(p + ".excluded", true);
  }
  rep.result("all_products_one", report.all_products_one);
  rep.result("worst_deviation", report.worst_deviation);
  rep.result("tolerance", "1e-09");
  rep.result("distinguished_by_matching", report.matching_distinguished);
  rep.result("agreement", report.agrees);

  rep.check("gamma_agrees_with_matching", report.agrees,
            "all products = 1 (worst |product-1| = " + format_double(report.worst_deviation) +
                ", tol 1e-09) exactly when the matcher says distinguished");
}

inline void run_orbits(Report& rep, int n, int q, bool full_enum, int random_checks,
                       unsigned long long seed) {
  Fq2 F(q);
  rep.input("n", std::to_string(n));
  rep.input("q", std::to_string(q));
  rep.input("full_enum", full_enum ? "true" : "false");
  rep.input("random_checks", std::to_string(random_checks));
  rep.input("seed", std::to_string(seed));

  rep.result("s_cardinality_formula", s_cardinality_formula(n, q));

  if (full_enum) {
    auto dec = orbit_decomposition(F, n);
    rep.result("s_enumerated", dec.total);
    rep.check("formula_matches_enumeration", dec.total == s_cardinality_formula(n, q),
              "group-order ratio equals the enumerated size");
    rep.result("orbit_count", static_cast<long long>(dec.orbits.size()));
    rep.result("involution_count", involution_count_recurrence(n));
    rep.check("orbit_count_matches_involutions",
              static_cast<long>(dec.orbits.size()) == involution_count_recurrence(n),
              "one orbit per involution of the symmetric group");
    for (size_t i = 0; i < dec.orbits.size(); ++i) {
      std::string p = "orbit." + std::to_string(i + 1);
      rep.result(p + ".w", perm_str(dec.orbits[i].w));
      rep.result(p + ".size", static_cast<unsigned long long>(dec.orbits[i].elements.size()));
    }
    rep.check("one_involution_per_orbit", true,
              "verified element by element during the decomposition");

    auto reps = u_r_w_representatives(F, n);
    std::set<int> hit;
    for (const auto& r : reps) hit.insert(dec.orbit_of.at(mat_key(F, s_map(F, r.g))));
    rep.result("coverage_orbits_hit", static_cast<long long>(hit.size()));
    rep.check("representative_coverage", hit.size() == dec.orbits.size(),
              "the block representatives meet every orbit");
  }

  if (random_checks > 0) {
    Rng rng(seed);
    int exact = 0;
    for (int trial = 0; trial < random_checks; ++trial) {
      FiniteMatrix s = s_map(F, random_invertible(F, n, rng));
      ReductionResult red = reduce_to_involution(F, s);
      if (perm_is_involution(red.w) && twisted_act(F, red.y, permutation_matrix(F, red.w)) == s)
        ++exact;
    }
    rep.result("reductions_exact", exact);
    rep.check("reductions_all_exact",
              exact == random_checks,
              std::to_string(exact) + " of " + std::to_string(random_checks) +
                  " random reductions recompose exactly (seed " + std::to_string(seed) + ")");
  }
}

inline void run_cells(Report& rep, int n) {
  rep.input("n", std::to_string(n));
  auto cells = cell_order(n);
  rep.result("cell_count", static_cast<long long>(cells.size()));
  for (size_t i = 0; i < cells.size(); ++i) {
    std::string p = "cell." + std::to_string(i + 1);
    rep.result(p + ".w", perm_str(cells[i]));
    rep.result(p + ".length", perm_length(cells[i]));
  }
  auto violation = cell_order_violation(n);
  rep.result("downward_closed", !violation.has_value());
  rep.check("downward_closed", !violation.has_value(),
            "every Bruhat-smaller cell appears earlier in the listing (subword criterion)");
}

}  // namespace cli_detail

// Parses and executes one command line (without the program name). All
// output is returned rather than printed so tests and callers can capture
// it; exit codes follow 0 = ok, 1 = math check failure, 2 = usage error.
inline CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact tame principal series toolkit"};
  app.set_version_flag("--version", std::string("tamedist ") + kVersion);
  app.require_subcommand(1);

  std::string format = "plain";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"plain", "records"}))
      ->capture_default_str();
  unsigned long long seed = 2024;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  std::string ext_spec, chars_spec, mu_spec;
  int n = 0, q = 3, budget = 1000, random_checks = 100;
  bool full_enum = false;

  CLI::App* c_dist = app.add_subcommand("distinguish", "decide distinction of a tame tuple");
  c_dist->fallthrough();
  c_dist->add_option("--ext", ext_spec, "extension spec, e.g. unram:p=3 or ram:p=3,u0=0")->required();
  c_dist->add_option("--chars", chars_spec, "semicolon-separated character specs")->required();

  CLI::App* c_cex = app.add_subcommand("counterexample", "search for non-distinguished self-dual tuples");
  c_cex->fallthrough();
  c_cex->add_option("--n", n, "tuple length (>= 3)")->required();
  c_cex->add_option("--ext", ext_spec, "extension spec")->required();
  c_cex->add_option("--budget", budget, "max candidates to examine")->capture_default_str();

  CLI::App* c_gamma = app.add_subcommand("gamma", "gamma-factor distinction sweep for a 2x2 datum");
  c_gamma->fallthrough();
  c_gamma->add_option("--ext", ext_spec, "extension spec (unramified only)")->required();
  c_gamma->add_option("--mu", mu_spec, "character spec for mu")->required();

  CLI::App* c_orbits = app.add_subcommand("orbits", "orbit decomposition of the twisted space");
  c_orbits->fallthrough();
  c_orbits->add_option("--n", n, "matrix size")->required()->check(CLI::Range(1, 6));
  c_orbits->add_option("--q", q, "odd prime residue size")->required();
  c_orbits->add_flag("--full-enum", full_enum, "enumerate the space and decompose it");
  c_orbits->add_option("--random-checks", random_checks, "number of random reduction checks")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();

  CLI::App* c_cells = app.add_subcommand("cells", "Bruhat cell listing and closure check");
  c_cells->fallthrough();
  c_cells->add_option("--n", n, "symmetric group degree")->required()->check(CLI::Range(1, 6));

  std::vector<const char*> argv;
  argv.push_back("tamedist");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return {0, app.help()};
  } catch (const CLI::CallForVersion& e) {
    return {0, std::string("tamedist ") + kVersion + "\n"};
  } catch (const CLI::ParseError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }

  std::string command = app.get_subcommands().front()->get_name();
  Report rep(command);
  try {
    if (command == "distinguish")
      cli_detail::run_distinguish(rep, ext_spec, chars_spec);
    else if (command == "counterexample")
      cli_detail::run_counterexample(rep, ext_spec, n, budget);
    else if (command == "gamma")
      cli_detail::run_gamma(rep, ext_spec, mu_spec);
    else if (command == "orbits")
      cli_detail::run_orbits(rep, n, q, full_enum, random_checks, seed);
    else if (command == "cells")
      cli_detail::run_cells(rep, n);
  } catch (const ReductionAnomaly& e) {
    return {1, std::string("anomaly: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const std::overflow_error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {1, std::string("anomaly: ") + e.what() + "\n"};
  }

  return {rep.all_checks_pass() ? 0 : 1, rep.render(format)};
}

}  // namespace tamedist
