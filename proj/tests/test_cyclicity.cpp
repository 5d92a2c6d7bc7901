#include <catch2/catch_amalgamated.hpp>

#include "qcyc/cyclicity.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace qcyc;

namespace {

SpectralParam sp(const char* text) { return SpectralParam::parse(text); }
RootMultiset ms(const char* text) { return RootMultiset::parse(text); }

TensorProblem kr_problem(const char* type, const std::vector<KRFactor>& factors) {
  TensorProblem p;
  p.type = LieType::parse(type);
  const CartanData c = build_cartan(p.type);
  for (const auto& f : factors) p.factors.push_back(kr_tuple(c, f));
  return p;
}

HTuple shift_all(const HTuple& h, int k) {
  HTuple out = h;
  for (auto& comp : out.comps) comp = shift(comp, k);
  return out;
}

}  // namespace

TEST_CASE("kr tuples", "[cyclicity]") {
  const CartanData a1 = build_cartan({Family::A, 1});
  CHECK(kr_tuple(a1, {0, 1, sp("a")}).comps[0] == ms("{a}"));

  const CartanData a2 = build_cartan({Family::A, 2});
  const HTuple t = kr_tuple(a2, {1, 2, sp("a")});
  CHECK(t.comps[0].empty());
  CHECK(t.comps[1] == ms("{a*q, a*q^-1}"));

  // long node of B2 has d = 2
  const CartanData b2 = build_cartan({Family::B, 2});
  CHECK(kr_tuple(b2, {0, 2, sp("a")}).comps[0] == ms("{a*q^2, a*q^-2}"));
  CHECK(kr_tuple(b2, {1, 2, sp("a")}).comps[1] == ms("{a*q, a*q^-1}"));

  CHECK_THROWS_AS(kr_tuple(a2, {5, 1, sp("a")}), std::invalid_argument);
  CHECK_THROWS_AS(kr_tuple(a2, {0, 0, sp("a")}), std::invalid_argument);
}

TEST_CASE("main criterion: single factors and generic pairs", "[cyclicity]") {
  CHECK(check_main(kr_problem("B3", {{0, 2, sp("a")}})).satisfied());
  CHECK(check_main(TensorProblem{LieType::parse("A2"), {}}).satisfied());
  // distinct symbols keep every ratio generic
  CHECK(check_main(kr_problem("A1", {{0, 1, sp("a")}, {0, 1, sp("b")}})).satisfied());
}

TEST_CASE("main criterion: violated A1 pair with witness", "[cyclicity]") {
  const TensorProblem p = kr_problem("A1", {{0, 1, sp("a")}, {0, 1, sp("a*q^2")}});
  const Verdict v = check_main(p);
  REQUIRE_FALSE(v.satisfied());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->left_factor == 0);
  CHECK(v.witness->right_factor == 1);
  CHECK(v.witness->word.empty());  // w = identity
  CHECK(v.witness->node == 0);
  CHECK(v.witness->root == sp("a"));
  CHECK(v.witness->string_length == 1);
  CHECK(v.witness->string_center == sp("a*q^2"));
  CHECK(v.witness->exponent == -2);
  CHECK(witness_checks(build_cartan(p.type), *v.witness));

  // reversing the factors flips the verdict: the criterion is order-sensitive
  const TensorProblem reversed = kr_problem("A1", {{0, 1, sp("a*q^2")}, {0, 1, sp("a")}});
  CHECK(check_main(reversed).satisfied());
}

TEST_CASE("main criterion errors", "[cyclicity]") {
  TensorProblem bad;
  bad.type = LieType::parse("A2");
  HTuple t(2);
  t.comps[0] = ms("{a: -1}");
  bad.factors.push_back(t);
  CHECK_THROWS_AS(check_main(bad), std::invalid_argument);

  TensorProblem wrong_size;
  wrong_size.type = LieType::parse("A2");
  wrong_size.factors.push_back(HTuple(3));
  CHECK_THROWS_AS(check_main(wrong_size), std::invalid_argument);

  const TensorProblem p = kr_problem("A2", {{0, 1, sp("a")}, {1, 1, sp("a")}});
  CHECK_THROWS_AS(check_main(p, 2), weyl_cap_error);
}

TEST_CASE("check_main_all collects every violation", "[cyclicity]") {
  const TensorProblem p = kr_problem("A1", {{0, 1, sp("a")}, {0, 1, sp("a*q^2")}});
  const auto all = check_main_all(p);
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().exponent == -2);
  const CartanData c = build_cartan(p.type);
  for (const auto& w : all) CHECK(witness_checks(c, w));

  CHECK(check_main_all(kr_problem("A1", {{0, 1, sp("a")}, {0, 1, sp("b")}})).empty());
}

TEST_CASE("sl2 reduction: main criterion equals the direct pair condition", "[cyclicity]") {
  qtest::TestRng rng(12);
  int violated = 0;
  for (int t = 0; t < 300; ++t) {
    const int m1 = rng.range(1, 4), m2 = rng.range(1, 4);
    const SpectralParam a1 = SpectralParam::symbol("a", 1, rng.range(-8, 8));
    const SpectralParam a2 = rng.chance(0.85)
                                 ? SpectralParam::symbol("a", 1, rng.range(-8, 8))
                                 : SpectralParam::symbol("b", 1, rng.range(-8, 8));
    const TensorProblem p = kr_problem("A1", {{0, m1, a1}, {0, m2, a2}});
    const bool main_ok = check_main(p).satisfied();
    CHECK(main_ok == qtest::oracle_sl2_pair(m1, a1, m2, a2));
    if (!main_ok) ++violated;
  }
  CHECK(violated > 0);
}

TEST_CASE("kashiwara criterion examples", "[cyclicity]") {
  const CartanData a1 = build_cartan({Family::A, 1});

  CHECK(check_kashiwara(a1, {{0, 1, sp("a")}}).satisfied());
  CHECK(check_kashiwara(a1, {}).satisfied());
  CHECK(check_kashiwara(a1, {{0, 1, sp("a")}, {0, 1, sp("b")}}).satisfied());

  // ratio q^2 against bound -2: satisfied
  CHECK(check_kashiwara(a1, {{0, 1, sp("a")}, {0, 1, sp("a*q^-2")}}).satisfied());

  // ratio q^-3 <= bound -2: violated
  const auto kv = check_kashiwara(a1, {{0, 1, sp("a")}, {0, 1, sp("a*q^3")}});
  REQUIRE_FALSE(kv.satisfied());
  REQUIRE(kv.violation.has_value());
  CHECK(kv.violation->left_factor == 0);
  CHECK(kv.violation->right_factor == 1);
  CHECK(kv.violation->exponent == -3);
  CHECK(kv.violation->bound == -2);

  CHECK_THROWS_AS(check_kashiwara(a1, {{3, 1, sp("a")}}), std::invalid_argument);
}

TEST_CASE("kashiwara satisfied implies main satisfied", "[cyclicity]") {
  qtest::TestRng rng(13);
  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    const LieType type = LieType::parse(name);
    const CartanData c = build_cartan(type);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
      std::vector<KRFactor> factors;
      const int count = rng.range(1, 3);
      for (int f = 0; f < count; ++f)
        factors.push_back(KRFactor{rng.range(0, c.n - 1), rng.range(1, 3),
                                   SpectralParam::symbol("a", 1, rng.range(-8, 8))});
      if (!check_kashiwara(c, factors).satisfied()) continue;
      ++checked;
      TensorProblem p;
      p.type = type;
      for (const auto& f : factors) p.factors.push_back(kr_tuple(c, f));
      CHECK(check_main(p).satisfied());
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("orbit roots of a KR factor stay above the string floor", "[cyclicity]") {
  // every root of (T_w pi^i_{m,a})_{i'} is a q^e a with e >= d_i (1 - m)
  for (const char* name : {"B2", "G2"}) {
    const LieType type = LieType::parse(name);
    const CartanData c = build_cartan(type);
    const WeylGroup g = enumerate(c);
    for (int node = 0; node < c.n; ++node)
      for (int m = 1; m <= 3; ++m) {
        const SpectralParam a = SpectralParam::symbol("a");
        const auto orb = orbit(c, g, kr_tuple(c, {node, m, a}));
        for (std::uint32_t w = 0; w < g.size(); ++w)
          for (int i : ascents(g, w))
            for (const auto& [root, mult] : orb[w].comps[static_cast<std::size_t>(i)].entries) {
              const auto e = ratio(root, a);
              REQUIRE(e.has_value());
              CHECK(*e >= c.d[static_cast<std::size_t>(node)] * (1 - m));
            }
      }
  }
}

TEST_CASE("irreducibility certificates", "[cyclicity]") {
  const CartanData a2 = build_cartan({Family::A, 2});

  const auto single = certify_irreducible(a2, {{0, 3, SpectralParam::one()}});
  CHECK(single.order == std::vector<std::size_t>{0});
  CHECK(single.margins.empty());

  const auto cert = certify_irreducible(
      a2, {{0, 2, SpectralParam::one()}, {1, 1, SpectralParam::one()}});
  CHECK(cert.order == std::vector<std::size_t>{1, 0});
  REQUIRE(cert.margins.size() == 1);
  CHECK(cert.margins[0].margin >= 2);
  CHECK(cert.margins[0].margin == 3);
  CHECK_FALSE(cert.reversed_order_note.empty());

  const CartanData g2 = build_cartan({Family::G, 2});
  const auto gcert = certify_irreducible(
      g2, {{0, 1, SpectralParam::one()}, {1, 1, SpectralParam::one()}});
  CHECK(gcert.order == std::vector<std::size_t>{1, 0});  // d*m = (3, 1) sorts node 2 first
  REQUIRE(gcert.margins.size() == 1);
  CHECK(gcert.margins[0].margin > 0);

  CHECK_THROWS_AS(certify_irreducible(a2, {{0, 1, sp("a")}, {1, 1, sp("b")}}),
                  std::invalid_argument);
}

TEST_CASE("omega twist and dual transform", "[cyclicity]") {
  const CartanData a1 = build_cartan({Family::A, 1});
  HTuple empty1(1);
  CHECK(omega_twist(a1, empty1, 5) == empty1);
  CHECK(dual_transform(a1, empty1, 5) == empty1);

  HTuple h1(1);
  h1.comps[0] = ms("{a}");
  CHECK(omega_twist(a1, h1, 3).comps[0] == ms("{a^-1*q^3}"));
  CHECK(dual_transform(a1, h1, 2).comps[0] == ms("{a*q^2}"));

  const CartanData a2 = build_cartan({Family::A, 2});
  HTuple h2(2);
  h2.comps[0] = ms("{a}");
  const HTuple tw = omega_twist(a2, h2, 0);
  CHECK(tw.comps[0].empty());
  CHECK(tw.comps[1] == ms("{a^-1}"));

  // bar^2 = id: applying the dual twice shifts by 2c
  qtest::TestRng rng(14);
  for (const char* name : {"A3", "D4", "B3"}) {
    const CartanData c = build_cartan(LieType::parse(name));
    const HTuple h = qtest::rand_htuple(c, rng, 4, 2, -4, 4, false);
    const int cs = rng.range(-3, 3);
    CHECK(dual_transform(c, dual_transform(c, h, cs), cs) == shift_all(h, 2 * cs));
  }
}
