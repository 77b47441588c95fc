#include "koszulkit/lemmas.hpp"

#include "koszulkit/completion.hpp"
#include "koszulkit/criteria.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/koszul.hpp"

#include <sstream>

namespace koszulkit {

json PropertyReport::to_json() const {
  return json{{"name", name}, {"instances", instances}, {"failures", failures}, {"pass", passed()}};
}

namespace {

Integer binomial(int n, int k) {
  Integer out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

IdealSpec random_ideal(const Ring& ring, Rng& rng, int max_r, long long lo, long long hi) {
  int r = static_cast<int>(uniform(rng, 1, max_r));
  std::vector<Element> gens;
  for (int i = 0; i < r; ++i) gens.push_back(ring.from_integer(uniform(rng, lo, hi)));
  return IdealSpec(ring, gens);
}

std::string describe(const IdealSpec& ideal) { return ideal.to_json().dump(); }

ModuleInvariant homology_at(const FreeComplex& t, int i) { return homology_group(t, i).invariant(); }

// Same isomorphism class, or both zero (zero modules over different rings).
bool same_class(const ModuleInvariant& a, const ModuleInvariant& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return same_primary_structure(a, b);
}

}  // namespace

PropertyReport check_tower_laws(const Ring& ring, int max_r, int max_n, std::uint64_t seed, int count) {
  PropertyReport rep{"tower laws over " + ring.display_name(), 0, {}};
  Rng rng(seed);
  for (int c = 0; c < count; ++c) {
    IdealSpec ideal = random_ideal(ring, rng, max_r, 0, 12);
    KoszulTower tower(ideal);
    const int r = static_cast<int>(ideal.size());
    for (int n = 1; n <= max_n; ++n) {
      ++rep.instances;
      std::ostringstream where;
      where << "s = " << describe(ideal) << ", n = " << n << ": ";
      FreeComplex k = tower.stage(n);
      for (int j = 0; j <= r; ++j)
        if (Integer(k.rank(j)) != binomial(r, j)) rep.failures.push_back(where.str() + "rank in degree " + std::to_string(j));
      Augmentation a = tower.augmentation(n);
      if (!a.kills_boundaries || !a.square_commutes) rep.failures.push_back(where.str() + "augmentation square");
      ModuleInvariant h0 = homology_at(k, 0);
      ModuleInvariant quotient = quotient_invariant(ideal.generator_powers(static_cast<unsigned>(n)));
      if (!(h0 == quotient)) rep.failures.push_back(where.str() + "H_0 = " + h0.text() + " vs " + quotient.text());
      for (const auto& [i, inv] : tower.ell_homology(n)) {
        if (i < 1) continue;
        for (const auto& s : ideal.generator_powers(static_cast<unsigned>(n)).generators)
          if (!inv.killed_by(s.value()))
            rep.failures.push_back(where.str() + "H_" + std::to_string(i) + " not killed by " + ring.render_text(s));
      }
    }
  }
  return rep;
}

PropertyReport check_reduction_vanishing(std::uint64_t seed, int count) {
  PropertyReport rep{"H_0 vanishing transfers to Koszul stages", 0, {}};
  Ring z = Ring::integers();
  Rng rng(seed);
  for (int tries = 0; rep.instances < count && tries < 50 * count; ++tries) {
    IdealSpec ideal = random_ideal(z, rng, 2, 2, 6);
    int n = static_cast<int>(uniform(rng, 1, 3));
    Quotient q = quotient_ring(ideal, static_cast<unsigned>(n), QuotientFlavor::GeneratorPowers);
    const Integer& g = q.ring.modulus();
    if (g <= 1) continue;
    // Pieces in degrees >= 0 whose H_0 is prime to I.
    std::vector<Piece> pieces;
    Integer d = uniform(rng, 1, 9);
    while (gcd(d, g) != 1) d += 1;
    pieces.push_back({Piece::Kind::Cone, 0, z.from_integer(d)});
    int extra = static_cast<int>(uniform(rng, 1, 3));
    for (int k = 0; k < extra; ++k) {
      int deg = static_cast<int>(uniform(rng, 1, 2));
      if (uniform(rng, 0, 1) == 0) pieces.push_back({Piece::Kind::Unit, deg, {}});
      else pieces.push_back({Piece::Kind::Cone, deg, z.from_integer(uniform(rng, 0, 8))});
    }
    FreeComplex t = scramble(assemble(z, pieces), rng);
    FreeComplex reduced = base_change(t, q.map);
    if (!homology_at(reduced, 0).is_zero()) continue;
    ++rep.instances;
    KoszulTower tower(ideal);
    FreeComplex kt = tensor(tower.stage(n), t);
    std::string where = "s = " + describe(ideal) + ", n = " + std::to_string(n) + ", t = " + koszulkit::describe(z, pieces);
    if (!homology_at(kt, 0).is_zero()) rep.failures.push_back(where + ": H_0(k (x) t) != 0");
    ModuleInvariant lhs = homology_at(kt, 1), rhs = homology_at(reduced, 1);
    if (!same_class(lhs, rhs)) rep.failures.push_back(where + ": H_1 " + lhs.text() + " vs " + rhs.text());
  }
  return rep;
}

namespace {

std::vector<Piece> random_pieces(const Ring& ring, Rng& rng, const std::vector<Integer>& orders, int lo, int hi, int max_pieces) {
  std::vector<Piece> pieces;
  int count = static_cast<int>(uniform(rng, 1, max_pieces));
  for (int k = 0; k < count; ++k) {
    int deg = static_cast<int>(uniform(rng, lo, hi));
    if (uniform(rng, 0, 2) == 0) {
      pieces.push_back({Piece::Kind::Unit, deg, {}});
    } else {
      const Integer& o = orders[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(orders.size()) - 1))];
      pieces.push_back({Piece::Kind::Cone, deg, ring.from_integer(o)});
    }
  }
  return pieces;
}

std::optional<int> bottom_degree(const FreeComplex& t) {
  auto span = homology_span(t);
  if (!span) return std::nullopt;
  return span->first;
}

}  // namespace

PropertyReport check_nilpotent_bound(const Integer& p, std::uint64_t seed, int count) {
  PropertyReport rep{"lower bound lifts along Z/p^2 -> Z/p", 0, {}};
  Ring ring = Ring::integers_mod(p * p);
  IdealSpec ideal(ring, {ring.from_integer(p)});
  Quotient q = quotient_ring(ideal, 1);
  Rng rng(seed);
  for (int c = 0; c < count; ++c) {
    auto pieces = random_pieces(ring, rng, {0, 1, p, p + 1}, -1, 2, 4);
    FreeComplex t = scramble(assemble(ring, pieces), rng);
    ++rep.instances;
    auto over_r = bottom_degree(t);
    auto mod_p = bottom_degree(base_change(t, q.map));
    if (over_r.has_value() != mod_p.has_value() || (over_r && *over_r < *mod_p))
      rep.failures.push_back(koszulkit::describe(ring, pieces));
  }
  return rep;
}

PropertyReport check_vanishing_limit(const Integer& p, int big_n, std::uint64_t seed, int count) {
  PropertyReport rep{"H_0 of the derived completion vanishes", 0, {}};
  Ring ring = Ring::integers_mod(power(p, static_cast<unsigned>(big_n)));
  IdealSpec ideal(ring, {ring.from_integer(p)});
  Quotient q = quotient_ring(ideal, 1);
  Rng rng(seed);
  for (int tries = 0; rep.instances < count && tries < 50 * count; ++tries) {
    auto pieces = random_pieces(ring, rng, {0, 1, p, p * p, p + 1}, 0, 2, 4);
    FreeComplex t = scramble(assemble(ring, pieces), rng);
    if (!homology_at(base_change(t, q.map), 0).is_zero()) continue;
    ++rep.instances;
    CompletionReport cr = derived_completion(t, ideal, big_n + 1);
    const DegreeReport& d0 = cr.degree(0);
    bool stages_zero = true;
    for (const auto& s : d0.stages) stages_zero = stages_zero && s.is_zero();
    if (!stages_zero || d0.lim_kind != "stable" || !d0.lim.is_zero())
      rep.failures.push_back(koszulkit::describe(ring, pieces));
  }
  return rep;
}

PropertyReport check_stage_bounds(std::uint64_t seed, int count) {
  PropertyReport rep{"Koszul stages keep the homology bounds", 0, {}};
  Ring z = Ring::integers();
  Rng rng(seed);
  for (int c = 0; c < count; ++c) {
    IdealSpec ideal = random_ideal(z, rng, 2, 0, 6);
    auto pieces = random_pieces(z, rng, {0, 1, 2, 3, 4, 5, 6}, -1, 2, 4);
    FreeComplex d = scramble(assemble(z, pieces), rng);
    ++rep.instances;
    KoszulTower tower(ideal);
    auto bounds = homology_span(tensor(tower.stage(1), d));
    for (int n = 2; n <= 3; ++n) {
      auto span = homology_span(tensor(tower.stage(n), d));
      bool ok = !span || (bounds && span->first >= bounds->first && span->second <= bounds->second);
      if (!ok) {
        rep.failures.push_back("s = " + describe(ideal) + ", n = " + std::to_string(n) + ", d = " +
                               koszulkit::describe(z, pieces));
      }
    }
  }
  return rep;
}

PropertyReport check_reduced_stage(std::uint64_t seed, int count) {
  PropertyReport rep{"reduced Koszul stage splits with multiplicity binomial(r, i)", 0, {}};
  std::vector<Ring> rings{Ring::integers(), Ring::integers_mod(30), Ring::integers_mod(16)};
  Rng rng(seed);
  for (int tries = 0; rep.instances < count && tries < 50 * count; ++tries) {
    const Ring& ring = rings[static_cast<std::size_t>(uniform(rng, 0, 2))];
    IdealSpec ideal = random_ideal(ring, rng, 3, 0, 10);
    int n = static_cast<int>(uniform(rng, 1, 3));
    int m = n + static_cast<int>(uniform(rng, 0, 2));
    Quotient q = quotient_ring(ideal, static_cast<unsigned>(n), QuotientFlavor::GeneratorPowers);
    if (q.ring.kind() != RingKind::IntegersMod || q.ring.modulus() <= 1) continue;
    ++rep.instances;
    const int r = static_cast<int>(ideal.size());
    FreeComplex reduced = base_change(KoszulTower(ideal).stage(m), q.map);
    auto h = homology(reduced);
    for (int i = 0; i <= r; ++i) {
      std::vector<Rational> orders(static_cast<std::size_t>(binomial(r, i)), Rational(q.ring.modulus()));
      ModuleInvariant expected = ModuleInvariant::from_cyclic(Pid::integers(), orders);
      if (!(h[i] == expected))
        rep.failures.push_back("s = " + describe(ideal) + ", n = " + std::to_string(n) + ", m = " + std::to_string(m) +
                               ": H_" + std::to_string(i) + " = " + h[i].text());
    }
  }
  return rep;
}

}  // namespace koszulkit
