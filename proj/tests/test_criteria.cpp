#include "doctest.h"

#include "koszulkit/criteria.hpp"
#include "koszulkit/error.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/random.hpp"

using namespace koszulkit;

TEST_SUITE("criteria") {

TEST_CASE("Koszul completeness verdicts") {
  const Ring z = Ring::integers();
  auto zv = koszul_complete_check(IdealSpec(z, {Element(5)}), 6);
  CHECK(zv.verdict == "complete");
  CHECK(zv.exit_code() == 0);
  CHECK(koszul_complete_check(IdealSpec(z, {Element(4), Element(6)}), 6).verdict == "complete");
  CHECK(koszul_complete_check(IdealSpec(Ring::localized(5), {Element(5)}), 6).verdict == "complete");
  CHECK(koszul_complete_check(IdealSpec(Ring::integers_mod(12), {Element(2)}), 4).verdict == "complete");

  auto ex = koszul_complete_check(IdealSpec(Ring::exa_no(5), {Element(5)}), 8);
  CHECK(ex.verdict == "not_complete");
  CHECK(ex.exit_code() == 1);
  CHECK(ex.witness_degree == 1);
  CHECK(ex.rhs_vanishes_always);
  CHECK_THROWS_AS(koszul_complete_check(IdealSpec(z, {Element(5)}), 1), Error);
}

TEST_CASE("generator choice does not matter") {
  const Ring z = Ring::integers();
  auto a = koszul_complete_check(IdealSpec(z, {Element(2)}), 6);
  auto b = koszul_complete_check(IdealSpec(z, {Element(4), Element(6)}), 6);
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("Hom comparison") {
  const Ring z = Ring::integers();
  IdealSpec five(z, {Element(5)});
  FreeComplex c = FreeComplex::two_term(z, Element(5));
  CHECK(supported_on(c, five));
  CHECK_FALSE(supported_on(FreeComplex::unit(z), five));
  auto h = hom_set_comparison(c, c, five, 4);
  CHECK(h.verdict == "isomorphic");
  CHECK(h.annihilation_exponent == 1);
  CHECK(h.lhs.at(0) == ModuleInvariant::from_cyclic(Pid::integers(), {Rational(5)}));

  FreeComplex c25 = FreeComplex::two_term(z, Element(25));
  auto h2 = hom_set_comparison(c25, c, five, 2);
  CHECK(h2.verdict == "isomorphic");
  CHECK(h2.precision >= h2.annihilation_exponent + 1);

  CHECK_THROWS_AS(hom_set_comparison(FreeComplex::unit(z), c, five, 4), Error);
  auto sq = hom_set_comparison(FreeComplex::two_term(Ring::exa_no(5), Element(5)),
                               FreeComplex::two_term(Ring::exa_no(5), Element(5)), IdealSpec(Ring::exa_no(5), {Element(5)}), 4);
  CHECK(sq.verdict == "inconclusive");
}

TEST_CASE("complete ideals give isomorphic Hom sets") {
  Rng rng(41);
  const Ring z = Ring::integers();
  IdealSpec ideal(z, {Element(3)});
  REQUIRE(koszul_complete_check(ideal, 6).verdict == "complete");
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Piece> pa, pb;
    for (int k = 0; k < 2; ++k) {
      pa.push_back({Piece::Kind::Cone, static_cast<int>(uniform(rng, 0, 1)), Element(power(Integer(3), uniform(rng, 1, 2)))});
      pb.push_back({Piece::Kind::Cone, static_cast<int>(uniform(rng, 0, 1)), Element(power(Integer(3), uniform(rng, 1, 2)))});
    }
    auto h = hom_set_comparison(scramble(assemble(z, pa), rng), scramble(assemble(z, pb), rng), ideal, 3);
    CHECK(h.verdict == "isomorphic");
  }
}

TEST_CASE("amplitude descent") {
  const Ring r = Ring::integers_mod(25);
  IdealSpec five(r, {Element(5)});
  FreeComplex d = FreeComplex::two_term(r, Element(5));
  CHECK(mod_amplitude(d, five) == 1);
  DescentStep s = amplitude_descent_step(d, five);
  CHECK(s.amplitude_before == 1);
  CHECK(s.amplitude_after < s.amplitude_before);
  DescentStep s2 = amplitude_descent_step(s.next, five);
  CHECK(s2.amplitude_after == -1);
  CHECK_THROWS_AS(amplitude_descent_step(FreeComplex::two_term(r, Element(1)), five), Error);

  Rng rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Piece> pieces;
    int count = static_cast<int>(uniform(rng, 1, 4));
    for (int k = 0; k < count; ++k)
      pieces.push_back({uniform(rng, 0, 2) == 0 ? Piece::Kind::Unit : Piece::Kind::Cone,
                        static_cast<int>(uniform(rng, 0, 2)), r.from_integer(uniform(rng, 0, 24))});
    FreeComplex t = scramble(assemble(r, pieces), rng);
    int amp = mod_amplitude(t, five);
    for (int guard = 0; amp >= 0 && guard < 10; ++guard) {
      DescentStep step = amplitude_descent_step(t, five);
      CHECK(step.amplitude_before == amp);
      CHECK(step.amplitude_after < amp);
      CHECK(mod_amplitude(step.next, five) == step.amplitude_after);
      t = step.next;
      amp = step.amplitude_after;
    }
    CHECK(amp == -1);
  }
}

TEST_CASE("gallery") {
  for (const auto& e : counterexample_gallery()) {
    INFO(e.name << ": expected " << e.expected << ", got " << e.actual);
    CHECK(e.passed());
  }
  CHECK_THROWS_AS(gallery("no-such-preset", 5), Error);
}

}
