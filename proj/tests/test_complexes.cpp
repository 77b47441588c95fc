#include "doctest.h"
#include "oracles.hpp"

#include "koszulkit/homology.hpp"
#include "koszulkit/random.hpp"

using namespace koszulkit;

namespace {

long order_of(const ModuleInvariant& inv) {
  REQUIRE(inv.free_rank == 0);
  long n = 1;
  for (const auto& d : inv.torsion) n *= static_cast<long>(numerator_of(d));
  return n;
}

// A complex with nontrivial differentials over Z/m: scrambled sums of cones
// and units, optionally tensored with a small Koszul piece.
FreeComplex random_small_complex(const Ring& r, long m, Rng& rng) {
  std::vector<Piece> pieces;
  int count = static_cast<int>(uniform(rng, 1, 3));
  for (int k = 0; k < count; ++k) {
    Piece p;
    p.kind = uniform(rng, 0, 2) == 0 ? Piece::Kind::Unit : Piece::Kind::Cone;
    p.degree = static_cast<int>(uniform(rng, 0, 1));
    p.order = r.from_integer(uniform(rng, 0, m - 1));
    pieces.push_back(p);
  }
  FreeComplex t = scramble(assemble(r, pieces), rng);
  if (uniform(rng, 0, 2) == 0 && t.total_rank() <= 2)
    t = tensor(t, FreeComplex::two_term(r, r.from_integer(uniform(rng, 0, m - 1))));
  return t;
}

}  // namespace

TEST_SUITE("complexes") {

TEST_CASE("homology over Z/m against enumeration") {
  Rng rng(17);
  for (long m : {4L, 6L, 8L, 9L, 12L}) {
    const Ring r = Ring::integers_mod(m);
    for (int trial = 0; trial < 12; ++trial) {
      FreeComplex t = random_small_complex(r, m, rng);
      bool small = true;
      for (int i = t.lo(); i <= t.hi(); ++i) small = small && t.rank(i) <= 3;
      if (!small) continue;
      auto h = homology(t);
      for (int i = t.lo(); i <= t.hi(); ++i) {
        INFO("m=" << m << " complex=" << t.to_json().dump() << " degree=" << i);
        CHECK(oracle::counts_of(h.at(i), m) == oracle::brute_homology(t, i, m));
      }
    }
  }
}

TEST_CASE("homology over Z against the rank formula") {
  Rng rng(19);
  const Ring z = Ring::integers();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Piece> pieces;
    for (int k = 0; k < 3; ++k)
      pieces.push_back({uniform(rng, 0, 1) == 0 ? Piece::Kind::Unit : Piece::Kind::Cone,
                        static_cast<int>(uniform(rng, 0, 2)), Element(uniform(rng, -12, 12))});
    FreeComplex t = scramble(assemble(z, pieces), rng);
    auto h = homology(t);
    for (int i = t.lo(); i <= t.hi(); ++i) {
      auto to_imat = [](const Matrix& a) {
        oracle::IMat out(a.rows(), std::vector<Integer>(a.cols()));
        for (std::size_t r = 0; r < a.rows(); ++r)
          for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = numerator_of(a(r, c).value());
        return out;
      };
      auto out_f = oracle::invariant_factors(to_imat(t.d(i)), t.rank(i));
      auto in_f = oracle::invariant_factors(to_imat(t.d(i + 1)), t.rank(i + 1));
      std::vector<Rational> torsion;
      for (const auto& d : in_f)
        if (d != 1) torsion.push_back(Rational(d));
      std::size_t free_rank = t.rank(i) - out_f.size() - in_f.size();
      CHECK(h.at(i).free_rank == free_rank);
      CHECK(h.at(i).torsion == torsion);
    }
  }
}

TEST_CASE("chain maps modulo homotopy against the Hom complex") {
  for (long m : {4L, 8L, 9L}) {
    const Ring r = Ring::integers_mod(m);
    for (long a = 0; a < m; a += (m == 9 ? 3 : 2)) {
      for (long b = 0; b < m; ++b) {
        FreeComplex x = FreeComplex::two_term(r, r.from_integer(a)), y = FreeComplex::two_term(r, r.from_integer(b));
        INFO("m=" << m << " a=" << a << " b=" << b);
        CHECK(order_of(hom_group(x, y)) == oracle::brute_chain_maps_mod_homotopy(x, y, m));
      }
    }
  }
  const Ring r = Ring::integers_mod(4);
  FreeComplex s = direct_sum(FreeComplex::two_term(r, Element(2)), FreeComplex::two_term(r, Element(1)));
  FreeComplex u = FreeComplex::two_term(r, Element(2));
  CHECK(order_of(hom_group(s, u)) == oracle::brute_chain_maps_mod_homotopy(s, u, 4));
  CHECK(order_of(hom_group(s, s)) == oracle::brute_chain_maps_mod_homotopy(s, s, 4));
}

TEST_CASE("structural identities") {
  Rng rng(23);
  const Ring r = Ring::integers_mod(12);
  for (int trial = 0; trial < 30; ++trial) {
    FreeComplex t = random_small_complex(r, 12, rng);
    CHECK(dual(dual(t)) == t);
    CHECK(shift(shift(t, 3), -3) == t);
    CHECK(FreeComplex::from_json(t.to_json()) == t);
    CHECK(is_acyclic(cone(ChainMap::identity(t)).complex));
    CHECK(is_quasi_iso(ChainMap::identity(t)));
    auto h = homology(t), hs = homology(shift(t, 2));
    for (const auto& [i, inv] : h) CHECK(hs.at(i + 2) == inv);
    for (int i = t.lo(); i <= t.hi() + 1; ++i) CHECK(is_zero_matrix(multiply(r, t.d(i - 1), t.d(i))));
    FreeComplex tt = tensor(t, FreeComplex::two_term(r, Element(3)));
    for (int i = tt.lo(); i <= tt.hi() + 1; ++i) CHECK(is_zero_matrix(multiply(r, tt.d(i - 1), tt.d(i))));
  }
}

TEST_CASE("cone(5) tensor cone(5) over Z") {
  const Ring z = Ring::integers();
  FreeComplex c = FreeComplex::two_term(z, Element(5));
  auto h = homology(tensor(c, c));
  const Pid pid = Pid::integers();
  CHECK(h.at(0) == ModuleInvariant::from_cyclic(pid, {Rational(5)}));
  CHECK(h.at(1) == ModuleInvariant::from_cyclic(pid, {Rational(5)}));
  CHECK(h.at(2).is_zero());
}

TEST_CASE("induced maps on homology") {
  const Ring z = Ring::integers();
  FreeComplex c = FreeComplex::two_term(z, Element(6));
  ChainMap three = ChainMap::scalar(z, Element(3));
  ChainMap tc = tensor(three, ChainMap::identity(c));
  HomologyGroup ht = homology_group(tc.target(), 0);
  REQUIRE(ht.generator_count() == 1);
  RMat g = induced_map(tc, ht, ht);
  CHECK(mod(numerator_of(g(0, 0)), 6) == 3);
}

}
