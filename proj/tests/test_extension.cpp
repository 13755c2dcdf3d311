#include <catch2/catch_amalgamated.hpp>

#include "tamedist/extension.hpp"
#include "tamedist/rng.hpp"

using namespace tamedist;

TEST_CASE("unramified extension data") {
  auto ext = make_unramified(3);
  CHECK(ext->q == 3);
  CHECK(ext->q_K == 9);
  CHECK(ext->e() == 1);
  CHECK(ext->kres->element_order(ext->g) == 8);
  CHECK(ext->describe() == "unram:p=3,f=1");
}

TEST_CASE("ramified extension data") {
  auto ext = make_ramified(3, 1);
  CHECK(ext->q == 3);
  CHECK(ext->q_K == 3);
  CHECK(ext->e() == 2);
  CHECK(ext->describe() == "ram:p=3,u0=1,f=1");
  CHECK_THROWS_AS(make_ramified(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_ramified(3, -1), std::invalid_argument);
}

TEST_CASE("extension construction rejects bad parameters") {
  CHECK_THROWS_AS(make_unramified(2), std::invalid_argument);
  CHECK_THROWS_AS(make_unramified(9), std::invalid_argument);
  CHECK_THROWS_AS(make_unramified(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_ramified(2, 0), std::invalid_argument);
}

TEST_CASE("residue Frobenius acts as x -> x^q and is an involution") {
  auto ext = make_unramified(3);
  // q = 3, modulus 8: dlog 1 -> 3, dlog 3 -> 9 = 1 mod 8
  CHECK(frobenius(ResidueElement{1, false}, ext).dlog == 3);
  CHECK(frobenius(ResidueElement{3, false}, ext).dlog == 1);
  CHECK(frobenius(ResidueElement{0, true}, ext).is_zero);

  for (auto e : {make_unramified(3), make_unramified(5), make_unramified(3, 2)}) {
    for (long k = 0; k < e->units_order(); ++k) {
      ResidueElement x{k, false};
      CHECK(frobenius(frobenius(x, e), e).dlog == k);
    }
  }

  auto ram = make_ramified(5, 0);
  for (long k = 0; k < 4; ++k) CHECK(frobenius(ResidueElement{k, false}, ram).dlog == k);
}

TEST_CASE("unramified norms double the valuation and match residue norms") {
  // worked values at p = 3: N(p * g) has valuation 2 and unit part g_F
  auto ext = make_unramified(3);
  auto n = norm_tame(TameKElement{1, 1}, ext);
  CHECK(n.v == 2);
  CHECK(n.unit_dlog == 1);
  n = norm_tame(TameKElement{0, 1}, ext);
  CHECK(n.v == 0);
  CHECK(n.unit_dlog == 1);

  // oracle: the residue norm of g^k is g^{k(q+1)}, computed in the field
  // itself, and g_F = g^{q+1} generates the residue units of F
  for (auto e : {make_unramified(3), make_unramified(5)}) {
    const auto& f = *e->kres;
    long gF = f.pow(e->g, e->q + 1);
    CHECK(f.element_order(gF) == e->q - 1);
    for (long k = 0; k < e->units_order(); ++k) {
      long x = f.from_dlog(k);
      long norm_in_field = f.mul(x, f.pow(x, e->q));
      long expected = f.pow(gF, norm_tame(TameKElement{0, k}, e).unit_dlog);
      CHECK(norm_in_field == expected);
    }
  }
}

TEST_CASE("ramified norms send the uniformizer to -d") {
  // N(sqrt(d)) = -d = -p*t, so the unit part is -t with t = g^{u0}
  for (int u0 : {0, 1}) {
    auto ext = make_ramified(3, u0);
    const auto& f = *ext->kres;
    auto n = norm_tame(TameKElement{1, 0}, ext);
    CHECK(n.v == 1);
    CHECK(n.unit_dlog == f.dlog(f.neg(f.from_dlog(u0))));
  }
  for (int u0 : {0, 1, 2, 3}) {
    auto ext = make_ramified(5, u0);
    const auto& f = *ext->kres;
    auto n = norm_tame(TameKElement{1, 0}, ext);
    CHECK(n.unit_dlog == f.dlog(f.neg(f.from_dlog(u0))));
  }
}

TEST_CASE("norm of an embedded element of F is its square") {
  tamedist::Rng rng(11);
  for (auto ext : {make_unramified(3), make_unramified(5), make_ramified(3, 0),
                   make_ramified(3, 1), make_ramified(5, 2)}) {
    long oF = ext->f_units_order();
    for (int i = 0; i < 50; ++i) {
      TameFElement x{rng.pick_long(-3, 3), rng.pick_long(0, oF - 1)};
      auto n = norm_tame(embed_tame_F(x, ext), ext);
      CHECK(n.v == 2 * x.v);
      CHECK(n.unit_dlog == (2 * x.unit_dlog) % oF);
    }
  }
}

TEST_CASE("norm unit parts are well defined mod the F-unit order") {
  auto ext = make_unramified(5);
  long o = ext->units_order();
  for (long k = 0; k < o; ++k) {
    auto a = norm_tame(TameKElement{0, k}, ext);
    auto b = norm_tame(TameKElement{0, k + o}, ext);
    CHECK(a.unit_dlog == b.unit_dlog);
  }
}

TEST_CASE("extension spec strings parse and reject junk") {
  auto ext = parse_extension("unram:p=3");
  CHECK(ext->describe() == "unram:p=3,f=1");
  CHECK(parse_extension("ram:p=5,u0=2")->u0 == 2);
  CHECK(parse_extension("unram:p=3,f=2")->q == 9);
  CHECK(same_extension(parse_extension(ext->describe()), ext));

  CHECK_THROWS_WITH(parse_extension("unram:p=2"),
                    Catch::Matchers::ContainsSubstring("even residue characteristic"));
  CHECK_THROWS_AS(parse_extension("p=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extension("weird:p=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extension("unram:q=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extension("ram:p=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extension("unram:p=3,u0=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extension("unram:p=x"), std::invalid_argument);
}
