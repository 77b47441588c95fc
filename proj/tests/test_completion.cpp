#include "doctest.h"

#include "koszulkit/completion.hpp"
#include "koszulkit/error.hpp"
#include "koszulkit/random.hpp"

using namespace koszulkit;

namespace {

Integer entry(const json& v) { return parse_integer(v.at(0).get<std::string>()); }

}  // namespace

TEST_SUITE("completion") {

TEST_CASE("module towers") {
  const Ring z = Ring::integers();
  IdealSpec five(z, {Element(5)});
  auto free = complete_module(ModuleSpec::free(z, 1), five, 4);
  REQUIRE(free.stages.size() == 4);
  for (unsigned n = 1; n <= 4; ++n)
    CHECK(free.stages[n - 1] == ModuleInvariant::from_cyclic(Pid::integers(), {Rational(power(Integer(5), n))}));
  CHECK_FALSE(free.stabilized_at);
  CHECK_FALSE(free.classically_complete);

  auto tors = complete_module(ModuleSpec::cyclic(z, Element(25)), five, 5);
  CHECK(tors.stabilized_at == 2);
  CHECK(tors.classically_complete);

  auto coprime = complete_module(ModuleSpec::cyclic(z, Element(12)), five, 3);
  for (const auto& s : coprime.stages) CHECK(s.is_zero());
  CHECK_FALSE(coprime.classically_complete);
}

TEST_CASE("module parsing") {
  const Ring z = Ring::integers();
  CHECK(ModuleSpec::parse("Z", z, 5).invariant() == ModuleInvariant::free(Pid::integers(), 1));
  CHECK(ModuleSpec::parse("Z^3", z, 5).invariant() == ModuleInvariant::free(Pid::integers(), 3));
  CHECK(ModuleSpec::parse("Z/12", z, 5).invariant() ==
        ModuleInvariant::from_cyclic(Pid::integers(), {Rational(12)}));
  CHECK(ModuleSpec::parse("Prufer", z, 5).kind() == ModuleSpec::Kind::Prufer);
  CHECK(ModuleSpec::parse("Q", z, 5).kind() == ModuleSpec::Kind::FractionField);
  CHECK_THROWS_AS(ModuleSpec::parse("nope", z, 5), Error);
}

TEST_CASE("idempotent lifts of random rank-one idempotents") {
  Rng rng(37);
  for (long p : {3L, 5L, 7L}) {
    const Ring z = Ring::integers();
    RingTower tower(IdealSpec(z, {Element(p)}), 6);
    const Integer q = power(Integer(p), 6);
    for (int trial = 0; trial < 10; ++trial) {
      // E = u v^T with v.u = 1 mod p.
      std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
      std::vector<long> u(n), v(n);
      long dot = 0;
      do {
        for (auto& x : u) x = uniform(rng, 0, p - 1);
        for (auto& x : v) x = uniform(rng, 0, p - 1);
        dot = 0;
        for (std::size_t k = 0; k < n; ++k) dot += u[k] * v[k];
      } while (dot % p == 0);
      long inv = static_cast<long>(inverse_mod(Integer(dot), Integer(p)));
      Matrix e(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e(i, j) = Element(Rational((u[i] * v[j] * inv) % p));
      IdempotentLift lift = idempotent_lift(e, tower, 6);
      CHECK(lift.verified);
      const Matrix& f = lift.result();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Integer acc = 0;
          for (std::size_t k = 0; k < n; ++k) acc += numerator_of(f(i, k).value()) * numerator_of(f(k, j).value());
          CHECK(mod(acc, q) == mod(numerator_of(f(i, j).value()), q));
          CHECK(mod(numerator_of(f(i, j).value()), Integer(p)) == numerator_of(e(i, j).value()));
        }
    }
  }
}

TEST_CASE("non-idempotent input") {
  RingTower tower(IdealSpec(Ring::integers(), {Element(5)}), 3);
  Matrix e(1, 1);
  e(0, 0) = Element(2);
  CHECK_THROWS_AS(idempotent_lift(e, tower, 3), Error);
}

TEST_CASE("derived completeness witnesses") {
  const Ring z = Ring::integers();
  SUBCASE("Z at 5: alternating target") {
    auto r = derived_complete_check(ModuleSpec::free(z, 1), Element(5), 6);
    CHECK(r.verdict == "not_complete");
    CHECK(r.exit_code() == 1);
    REQUIRE(r.witness.at("target").size() == 6);
    for (std::size_t k = 0; k < 6; ++k) CHECK(entry(r.witness.at("target")[k]) == (k % 2 == 0 ? 1 : 0));
  }
  SUBCASE("Z_(p): digits of a p-adic square root") {
    for (long p : {3L, 5L, 7L}) {
      const int k = 7;
      auto r = derived_complete_check(ModuleSpec::free(Ring::localized(p), 1), Element(p), k);
      REQUIRE(r.verdict == "not_complete");
      Integer x = 0, pl = 1;
      for (const auto& d : r.witness.at("target")) {
        x += entry(d) * pl;
        pl *= p;
      }
      // x^2 = 1 + p^3 m mod p^k for the non-square named in the reason.
      auto pos = r.reason.find("sqrt(");
      Integer c = parse_integer(r.reason.substr(pos + 5, r.reason.find(')', pos) - pos - 5));
      CHECK(mod(x * x - c, pl) == 0);
      Integer root = boost::multiprecision::sqrt(c);
      CHECK(root * root != c);
    }
  }
  SUBCASE("kernel sequences satisfy x_n = s x_{n+1}") {
    for (auto [m, s] : {std::pair{12L, 2L}, std::pair{6L, 5L}, std::pair{45L, 3L}}) {
      auto r = derived_complete_check(ModuleSpec::cyclic(z, Element(m)), Element(s), 5);
      REQUIRE(r.verdict == "not_complete");
      const json& seq = r.witness.at("sequence");
      CHECK(mod(entry(seq[0]), Integer(m)) != 0);
      for (std::size_t k = 0; k + 1 < seq.size(); ++k) CHECK(mod(entry(seq[k]) - s * entry(seq[k + 1]), Integer(m)) == 0);
    }
  }
  CHECK(derived_complete_check(ModuleSpec::cyclic(z, Element(25)), Element(5), 4).verdict == "complete");
  CHECK(derived_complete_check(ModuleSpec::free(Ring::integers_mod(25), 1), Element(5), 4).verdict == "complete");
  CHECK(derived_complete_check(ModuleSpec::fraction_field(z), Element(5), 4).verdict == "not_complete");
  CHECK(derived_complete_check(ModuleSpec::prufer(z, 5), Element(2), 4).verdict == "not_complete");
  auto pr = derived_complete_check(ModuleSpec::prufer(z, 5), Element(5), 4);
  CHECK(pr.verdict == "inconclusive");
  CHECK(pr.exit_code() == 3);
}

TEST_CASE("separatedness") {
  const Ring z = Ring::integers();
  IdealSpec five(z, {Element(5)});
  CHECK(separatedness_check(ModuleSpec::free(z, 2), five, 4).verdict == "separated");
  auto pr = separatedness_check(ModuleSpec::prufer(z, 5), five, 4);
  CHECK(pr.verdict == "not_separated");
  CHECK(pr.witness.at("element") == "1/5^1");
  CHECK(separatedness_check(ModuleSpec::fraction_field(z), five, 4).verdict == "not_separated");
  CHECK_THROWS_AS(separatedness_check(ModuleSpec::free(Ring::localized(5), 1), five, 4), Error);
}

TEST_CASE("derived completion of the unit") {
  const Ring z = Ring::integers();
  auto rep = derived_completion(FreeComplex::unit(z), IdealSpec(z, {Element(5)}), 6);
  const DegreeReport& d0 = rep.degree(0);
  REQUIRE(d0.stages.size() == 6);
  for (unsigned n = 1; n <= 6; ++n)
    CHECK(d0.stages[n - 1] == ModuleInvariant::from_cyclic(Pid::integers(), {Rational(power(Integer(5), n))}));
  CHECK(d0.lim_kind == "pro-cyclic");
  CHECK(d0.ml_at == 1);
  CHECK(d0.lim1 == "vanishes");

  auto cone = derived_completion(FreeComplex::two_term(z, Element(5)), IdealSpec(z, {Element(5)}), 5);
  CHECK(cone.degree(0).lim_kind == "stable");
  CHECK(cone.degree(0).lim == ModuleInvariant::from_cyclic(Pid::integers(), {Rational(5)}));

  auto unit_ideal = derived_completion(FreeComplex::unit(z), IdealSpec(z, {Element(1)}), 4);
  for (const auto& d : unit_ideal.degrees) CHECK(d.lim.is_zero());
}

TEST_CASE("f_s truncation is unimodular") {
  const Ring z = Ring::integers();
  FreeComplex f = f_s_truncation(z, Element(5), 6);
  CHECK(f.rank(0) == 6);
  CHECK(f.rank(1) == 6);
  CHECK(is_acyclic(f));
}

}
