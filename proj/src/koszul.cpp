#include "koszulkit/koszul.hpp"

#include "koszulkit/error.hpp"

namespace koszulkit {

namespace {

FreeComplex koszul_of(const Ring& ring, const std::vector<Element>& gens) {
  FreeComplex k = FreeComplex::two_term(ring, gens.front());
  for (std::size_t i = 1; i < gens.size(); ++i) k = tensor(k, FreeComplex::two_term(ring, gens[i]));
  return k;
}

// cone(s^n) -> cone(s^{n-1}): s in degree 1, identity in degree 0.
ChainMap factor_map(const Ring& ring, const Element& s, int n) {
  FreeComplex src = FreeComplex::two_term(ring, ring.pow(s, static_cast<unsigned>(n)));
  FreeComplex dst = FreeComplex::two_term(ring, ring.pow(s, static_cast<unsigned>(n - 1)));
  Matrix one(1, 1), by_s(1, 1);
  one(0, 0) = ring.one();
  by_s(0, 0) = s;
  return ChainMap(src, dst, {one, by_s}, 0);
}

}  // namespace

FreeComplex koszul(const IdealSpec& ideal) { return koszul_of(ideal.ring, ideal.generators); }

FreeComplex KoszulTower::stage(int n) const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "tower stages start at n = 1");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = stages_.find(n); it != stages_.end()) return it->second;
  }
  FreeComplex k = koszul_of(ideal_.ring, ideal_.generator_powers(static_cast<unsigned>(n)).generators);
  std::lock_guard<std::mutex> lock(mutex_);
  return stages_.emplace(n, std::move(k)).first->second;
}

ChainMap KoszulTower::map_q(int n) const {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "q_n needs n >= 2");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = maps_.find(n); it != maps_.end()) return it->second;
  }
  const Ring& ring = ideal_.ring;
  ChainMap q = factor_map(ring, ideal_.generators.front(), n);
  for (std::size_t i = 1; i < ideal_.size(); ++i) q = tensor(q, factor_map(ring, ideal_.generators[i], n));
  std::lock_guard<std::mutex> lock(mutex_);
  return maps_.emplace(n, std::move(q)).first->second;
}

ChainMap KoszulTower::transition(int n, int m) const {
  if (m > n || m < 1) throw Error(ErrorKind::InvalidArgument, "transition maps go down the tower");
  ChainMap out = ChainMap::identity(stage(n));
  for (int k = n; k > m; --k) out = compose(map_q(k), out);
  return out;
}

Augmentation KoszulTower::augmentation(int n) const {
  const Ring& ring = ideal_.ring;
  Augmentation a;
  a.n = n;
  a.quotient = quotient_ring(ideal_, static_cast<unsigned>(n), QuotientFlavor::GeneratorPowers);
  const RingMap& p = a.quotient.map;

  FreeComplex k = stage(n);
  Matrix d1 = k.d(1);
  a.kills_boundaries = true;
  for (std::size_t j = 0; j < d1.cols(); ++j)
    if (!a.quotient.ring.is_zero(p(d1(0, j)))) a.kills_boundaries = false;

  if (n == 1) {
    // R/I^(0) is the zero ring; the square commutes trivially.
    a.square_commutes = true;
    return a;
  }
  Quotient prev = quotient_ring(ideal_, static_cast<unsigned>(n - 1), QuotientFlavor::GeneratorPowers);
  auto can = [&](const Element& x) { return prev.map(p.lift(x)); };
  Element q0 = map_q(n).component(0)(0, 0);
  std::vector<Element> samples{ring.one(), ring.zero()};
  for (int c = -3; c <= 5; ++c) samples.push_back(ring.from_integer(c));
  for (const auto& s : ideal_.generators) {
    samples.push_back(s);
    samples.push_back(ring.add(s, ring.one()));
  }
  a.square_commutes = true;
  for (const auto& x : samples) {
    // x in degree 0 of k^(n): around the square via p_n and via q_n then p_{n-1}.
    if (can(p(x)) != prev.map(ring.mul(q0, x))) a.square_commutes = false;
  }
  return a;
}

std::map<int, ModuleInvariant> KoszulTower::ell_homology(int n) const {
  FreeComplex k = stage(n);
  CoefficientDomain cd = coefficient_domain(ideal_.ring);
  std::map<int, ModuleInvariant> out;
  out[0] = ModuleInvariant::zero(cd.pid);
  out[0].validity = cd.validity;
  for (int i = 1; i <= k.hi(); ++i) out[i] = homology_group(k, i).invariant();
  return out;
}

json KoszulTower::stage_report(int n) const {
  FreeComplex k = stage(n);
  json ranks = json::object(), hom = json::object();
  for (int i = k.lo(); i <= k.hi(); ++i) ranks[std::to_string(i)] = k.rank(i);
  for (const auto& [i, inv] : homology(k)) hom[std::to_string(i)] = inv.to_json();
  std::string square = "unsupported";
  try {
    Augmentation a = augmentation(n);
    square = a.square_commutes && a.kills_boundaries ? "commutes" : "fails";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedQuotient) throw;
  }
  return json{{"n", n}, {"ranks", ranks}, {"homology", hom}, {"pq_square", square}};
}

std::pair<ModuleInvariant, ModuleInvariant> koszul_principal_homology(const IdealSpec& ideal) {
  if (ideal.size() != 1) throw Error(ErrorKind::InvalidArgument, "principal Koszul homology needs one generator");
  return {quotient_invariant(ideal), annihilator_of(ideal.ring, ideal.generators.front())};
}

}  // namespace koszulkit
