#include "doctest.h"
#include "oracles.hpp"

#include "koszulkit/koszul.hpp"
#include "koszulkit/random.hpp"

using namespace koszulkit;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

}  // namespace

TEST_SUITE("koszul") {

TEST_CASE("Kos(2) over Z/4") {
  const Ring r = Ring::integers_mod(4);
  auto h = homology(koszul(IdealSpec(r, {Element(2)})));
  const Pid pid = Pid::integers();
  CHECK(h.at(0) == ModuleInvariant::from_cyclic(pid, {Rational(2)}));
  CHECK(h.at(1) == ModuleInvariant::from_cyclic(pid, {Rational(2)}));
}

TEST_CASE("shape of Kos(s)") {
  const Ring z = Ring::integers();
  FreeComplex k = koszul(IdealSpec(z, {Element(2), Element(3), Element(5), Element(7)}));
  CHECK(k.lo() == 0);
  CHECK(k.hi() == 4);
  for (int i = 0; i <= 4; ++i) CHECK(k.rank(i) == binom(4, static_cast<std::size_t>(i)));
  CHECK(is_acyclic(k));
}

TEST_CASE("Kos(s) over Z is Z/g tensor an exterior algebra") {
  Rng rng(29);
  const Ring z = Ring::integers();
  const Pid pid = Pid::integers();
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 4));
    std::vector<Element> gens;
    Integer g = 0;
    for (std::size_t k = 0; k < r; ++k) {
      long v = uniform(rng, -30, 30);
      gens.push_back(Element(v));
      g = gcd(g, Integer(v));
    }
    if (g == 0) continue;
    auto h = homology(koszul(IdealSpec(z, gens)));
    for (std::size_t i = 0; i <= r; ++i) {
      std::vector<Rational> orders(binom(r - 1, i), Rational(g));
      CHECK(h.at(static_cast<int>(i)) == ModuleInvariant::from_cyclic(pid, orders));
    }
  }
}

TEST_CASE("Kos(s) over Z/m against enumeration") {
  Rng rng(31);
  for (long m : {4L, 6L, 8L, 9L, 12L}) {
    const Ring r = Ring::integers_mod(m);
    for (int trial = 0; trial < 6; ++trial) {
      std::size_t len = static_cast<std::size_t>(uniform(rng, 1, 3));
      std::vector<Element> gens;
      for (std::size_t k = 0; k < len; ++k) gens.push_back(r.from_integer(uniform(rng, 0, m - 1)));
      FreeComplex k = koszul(IdealSpec(r, gens));
      auto h = homology(k);
      for (int i = k.lo(); i <= k.hi(); ++i) CHECK(oracle::counts_of(h.at(i), m) == oracle::brute_homology(k, i, m));
    }
  }
  auto unit_ideal = homology(koszul(IdealSpec(Ring::integers_mod(12), {Element(2), Element(3)})));
  for (const auto& [i, inv] : unit_ideal) CHECK(inv.is_zero());
}

TEST_CASE("principal Koszul homology over the square-zero ring") {
  const Ring r = Ring::exa_no(5);
  auto [h0, h1] = koszul_principal_homology(IdealSpec(r, {Element(5)}));
  CHECK(same_primary_structure(h0, ModuleInvariant::from_cyclic(Pid::integers(), {Rational(5)})));
  CHECK(same_primary_structure(h1, ModuleInvariant::from_cyclic(Pid::integers(), {Rational(5)})));
  auto [u0, u1] = koszul_principal_homology(IdealSpec(r, {Element(2)}));
  CHECK(u0.is_zero());
  CHECK(u1.is_zero());
}

TEST_CASE("tower stages and transition maps") {
  for (const Ring& r : {Ring::integers(), Ring::integers_mod(30), Ring::localized(5)}) {
    IdealSpec ideal(r, {Element(2), Element(5)});
    KoszulTower tower(ideal);
    for (int n = 1; n <= 4; ++n) {
      CHECK(tower.stage(n) == koszul(ideal.generator_powers(static_cast<unsigned>(n))));
      Augmentation a = tower.augmentation(n);
      CHECK(a.kills_boundaries);
      if (n >= 2) CHECK(a.square_commutes);
    }
    for (int n = 2; n <= 4; ++n) {
      ChainMap q = tower.map_q(n);
      CHECK(q.source() == tower.stage(n));
      CHECK(q.target() == tower.stage(n - 1));
      // A chain map: d q = q d.
      for (int i = 1; i <= 2; ++i)
        CHECK(multiply(r, q.target().d(i), q.component(i)) == multiply(r, q.component(i - 1), q.source().d(i)));
    }
    ChainMap t41 = tower.transition(4, 1);
    ChainMap composed = compose(tower.map_q(2), compose(tower.map_q(3), tower.map_q(4)));
    for (int i = 0; i <= 2; ++i) CHECK(t41.component(i) == composed.component(i));
  }
}

TEST_CASE("ell homology is killed by s_i^n") {
  const Ring z = Ring::integers();
  KoszulTower tower(IdealSpec(z, {Element(6), Element(10)}));
  for (int n = 1; n <= 3; ++n)
    for (const auto& [i, inv] : tower.ell_homology(n)) {
      if (i <= 0) CHECK(inv.is_zero());
      CHECK(inv.killed_by(Rational(power(Integer(6), static_cast<unsigned>(n)))));
      CHECK(inv.killed_by(Rational(power(Integer(10), static_cast<unsigned>(n)))));
    }
}

}
