#include "doctest.h"

#include "koszulkit/error.hpp"
#include "koszulkit/ring.hpp"

using namespace koszulkit;

TEST_SUITE("rings") {

TEST_CASE("Z/12 axioms, exhaustively") {
  const Ring r = Ring::integers_mod(12);
  std::vector<Element> all;
  for (int a = 0; a < 12; ++a) all.push_back(r.from_integer(a));
  for (const auto& a : all) {
    CHECK(r.add(a, r.neg(a)) == r.zero());
    CHECK(r.mul(a, r.one()) == a);
    int v = static_cast<int>(numerator_of(a.value()));
    CHECK(r.is_unit(a) == (std::gcd(v, 12) == 1));
    if (r.is_unit(a)) CHECK(r.mul(a, r.inverse(a)) == r.one());
    for (const auto& b : all) {
      CHECK(r.add(a, b) == r.add(b, a));
      CHECK(r.mul(a, b) == r.mul(b, a));
      CHECK(numerator_of(r.mul(a, b).value()) == (v * numerator_of(b.value())) % 12);
      for (const auto& c : all) {
        CHECK(r.mul(a, r.mul(b, c)) == r.mul(r.mul(a, b), c));
        CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      }
    }
  }
}

TEST_CASE("localization at 5") {
  const Ring r = Ring::localized(5);
  CHECK(r.is_unit(Element(3)));
  CHECK(r.is_unit(Element(Rational(2, 7))));
  CHECK_FALSE(r.is_unit(Element(10)));
  CHECK(r.inverse(Element(3)) == Element(Rational(1, 3)));
  CHECK_THROWS(r.canonical(Element(Rational(1, 5))));
}

TEST_CASE("square-zero extension by the Pruefer module") {
  const Ring r = Ring::exa_no(5);
  Element x = r.canonical(Element(3, {Rational(2, 25)}));
  CHECK(r.mul(x, x) == r.canonical(Element(9, {Rational(12, 25)})));
  CHECK(r.inverse(x) == r.canonical(Element(Rational(1, 3), {Rational(22, 25)})));
  CHECK(r.mul(x, r.inverse(x)) == r.one());
  Element eps = r.canonical(Element(0, {Rational(1, 5)}));
  CHECK(r.mul(eps, eps) == r.zero());
  CHECK(r.mul(r.from_integer(5), eps) == r.zero());
  CHECK_FALSE(r.is_unit(eps));
  CHECK_FALSE(r.is_pid());
}

TEST_CASE("parse and render round trip") {
  for (const Ring& r : {Ring::integers(), Ring::integers_mod(12), Ring::localized(5), Ring::exa_no(5),
                        Ring::prime_field(7), Ring::rationals()}) {
    for (int a = -7; a <= 7; ++a) {
      Element x = r.from_integer(a);
      CHECK(r.parse(r.render(x)) == x);
    }
  }
  const Ring e = Ring::exa_no(3);
  Element x = e.canonical(Element(2, {Rational(4, 9)}));
  CHECK(e.parse(e.render(x)) == x);
  CHECK(parse_ring(Ring::integers_mod(30).descriptor()) == Ring::integers_mod(30));
  CHECK(parse_ring(Ring::exa_no(5).descriptor()) == Ring::exa_no(5));
}

TEST_CASE("names") {
  CHECK(ring_from_name("Z", 5) == Ring::integers());
  CHECK(ring_from_name("Z/12", 5) == Ring::integers_mod(12));
  CHECK(ring_from_name("Zmod:12", 5) == Ring::integers_mod(12));
  CHECK(ring_from_name("ZLoc:7", 5) == Ring::localized(7));
  CHECK(ring_from_name("exa-no", 3) == Ring::exa_no(3));
  CHECK_THROWS_AS(ring_from_name("nonsense", 5), Error);
}

TEST_CASE("quotients") {
  const Ring z = Ring::integers();
  IdealSpec i(z, {Element(4), Element(6)});
  CHECK(quotient_ring(i, 1).ring == Ring::integers_mod(2));
  CHECK(quotient_ring(i, 3).ring == Ring::integers_mod(8));
  CHECK(quotient_ring(i, 2, QuotientFlavor::GeneratorPowers).ring == Ring::integers_mod(4));
  auto q = quotient_ring(IdealSpec(z, {Element(6)}), 2);
  CHECK(q.ring == Ring::integers_mod(36));
  CHECK(q.map(Element(40)) == Element(4));
  CHECK(q.map(q.map.lift(Element(17))) == Element(17));
  auto f = quotient_ring(IdealSpec(Ring::integers_mod(30), {Element(2), Element(3)}), 4);
  CHECK(f.ring.is_zero_ring());
}

TEST_CASE("truncated completion") {
  IdealSpec i(Ring::integers(), {Element(5)});
  RingMap m = completion_map(i, 4);
  CHECK(m.target.precision() == 4);
  CHECK(m.target.face() == Ring::integers_mod(625));
  CHECK_FALSE(truncation_is_exact(m.target));
  CHECK(completion_is_torsion_free(m.target));
  CHECK(m.target.is_unit(m(Element(2))));
  RingMap e = completion_map(IdealSpec(Ring::integers_mod(25), {Element(5)}), 4);
  CHECK(truncation_is_exact(e.target));
}

}
