#include "koszulkit/module_invariant.hpp"

#include "koszulkit/error.hpp"

#include <algorithm>

namespace koszulkit {

Validity Validity::meet(const Validity& other) const {
  if (exact) return other;
  if (other.exact) return *this;
  return modulo(std::min(precision, other.precision));
}

ModuleInvariant ModuleInvariant::from_cyclic(const Pid& pid, const std::vector<Rational>& orders, Validity v) {
  const std::size_t n = orders.size();
  RMat diag(n, n);
  for (std::size_t i = 0; i < n; ++i) diag(i, i) = orders[i];
  ModuleInvariant out{pid, 0, {}, v};
  for (const auto& d : invariant_factors(pid, diag)) {
    if (d == 0) ++out.free_rank;
    else if (!pid.is_unit(d)) out.torsion.push_back(pid.normalize(d));
  }
  return out;
}

std::vector<std::pair<Integer, int>> ModuleInvariant::primary_parts() const {
  std::vector<std::pair<Integer, int>> parts;
  for (const auto& d : torsion) {
    switch (pid.kind()) {
      case PidKind::Integers:
        for (auto& pe : factorize(numerator_of(d))) parts.push_back(pe);
        break;
      case PidKind::LocalizedAtPrime: parts.emplace_back(pid.prime(), valuation(d, pid.prime())); break;
      default: break;
    }
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

bool ModuleInvariant::killed_by(const Rational& s) const {
  if (s == 0) return true;
  if (free_rank > 0) return false;
  return std::all_of(torsion.begin(), torsion.end(), [&](const Rational& d) { return pid.divides(d, s); });
}

int ModuleInvariant::annihilation_exponent(const Rational& g) const {
  if (is_zero()) return 0;
  if (g == 0) return 1;
  if (free_rank > 0) return -1;
  int m = 0;
  for (const auto& [p, k] : primary_parts()) {
    int v = valuation(numerator_of(g), p);
    if (v == 0) return -1;
    m = std::max(m, (k + v - 1) / v);
  }
  return m;
}

json ModuleInvariant::to_json() const {
  json t = json::array();
  for (const auto& d : torsion) t.push_back(to_string(d));
  json out{{"free", free_rank}, {"torsion", t}};
  if (!validity.exact) out["validity"] = validity.text();
  return out;
}

std::string ModuleInvariant::text() const {
  std::string out;
  auto append = [&](const std::string& part) { out += (out.empty() ? "" : " + ") + part; };
  if (free_rank == 1) append(pid.name());
  else if (free_rank > 1) append(pid.name() + "^" + std::to_string(free_rank));
  for (const auto& d : torsion) append(pid.name() + "/" + to_string(d));
  if (out.empty()) out = "0";
  if (!validity.exact) out += " (" + validity.text() + ")";
  return out;
}

bool ModuleInvariant::operator==(const ModuleInvariant& other) const {
  return pid == other.pid && free_rank == other.free_rank && torsion == other.torsion;
}

bool same_primary_structure(const ModuleInvariant& a, const ModuleInvariant& b) {
  return a.free_rank == b.free_rank && a.primary_parts() == b.primary_parts();
}

namespace {

std::vector<Rational> cyclic_orders(const ModuleInvariant& m) {
  std::vector<Rational> orders(m.free_rank, Rational(0));
  orders.insert(orders.end(), m.torsion.begin(), m.torsion.end());
  return orders;
}

void require_same_pid(const ModuleInvariant& a, const ModuleInvariant& b) {
  if (!(a.pid == b.pid)) throw Error(ErrorKind::RingMismatch, "invariants over " + a.pid.name() + " and " + b.pid.name());
}

}  // namespace

ModuleInvariant direct_sum(const ModuleInvariant& a, const ModuleInvariant& b) {
  require_same_pid(a, b);
  auto orders = cyclic_orders(a);
  auto more = cyclic_orders(b);
  orders.insert(orders.end(), more.begin(), more.end());
  return ModuleInvariant::from_cyclic(a.pid, orders, a.validity.meet(b.validity));
}

ModuleInvariant tensor(const ModuleInvariant& a, const ModuleInvariant& b) {
  require_same_pid(a, b);
  // R/x (x) R/y = R/gcd(x, y), with 0 standing for a free summand.
  std::vector<Rational> orders;
  for (const auto& x : cyclic_orders(a))
    for (const auto& y : cyclic_orders(b)) orders.push_back(a.pid.gcd(x, y));
  return ModuleInvariant::from_cyclic(a.pid, orders, a.validity.meet(b.validity));
}

CoefficientDomain coefficient_domain(const Ring& ring) {
  switch (ring.kind()) {
    case RingKind::IntegersMod: return {Pid::integers(), ring.modulus(), {}};
    case RingKind::TruncatedCompletion: {
      const Ring& face = ring.face();
      if (face.is_pid()) return {face.pid(), 0, {}};
      Validity v = truncation_is_exact(ring) ? Validity{} : Validity::modulo(ring.precision());
      return {Pid::integers(), face.modulus(), v};
    }
    case RingKind::SquareZero:
      throw Error(ErrorKind::UnsupportedRing, "no linear algebra kernel over " + ring.display_name());
    default: return {ring.pid(), 0, {}};
  }
}

ModuleInvariant cokernel_invariant(const RMat& a, const Pid& pid) {
  std::vector<Rational> orders(a.rows(), Rational(0));
  auto diag = invariant_factors(pid, a);
  for (std::size_t i = 0; i < diag.size(); ++i) orders[i] = diag[i];
  return ModuleInvariant::from_cyclic(pid, orders);
}

ModuleInvariant cokernel_invariant(const Matrix& a, const Ring& ring) {
  CoefficientDomain cd = coefficient_domain(ring);
  RMat lifted = to_rational(a);
  if (cd.modulus != 0) {
    RMat aug(a.rows(), a.cols() + a.rows());
    aug.set_block(0, 0, lifted);
    for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols() + i) = Rational(cd.modulus);
    lifted = aug;
  }
  ModuleInvariant out = cokernel_invariant(lifted, cd.pid);
  out.validity = cd.validity;
  return out;
}

namespace {

ModuleInvariant cyclic(const Pid& pid, const Rational& order, Validity v = {}) {
  return ModuleInvariant::from_cyclic(pid, {order}, v);
}

// Ann(s) inside Z/m is generated by m/gcd(s, m) and is cyclic of order gcd(s, m).
ModuleInvariant annihilator_mod(const Integer& s, const Integer& m, Validity v = {}) {
  return cyclic(Pid::integers(), Rational(gcd(s, m)), v);
}

}  // namespace

ModuleInvariant annihilator_of(const Ring& ring, const Element& element) {
  const Element s = ring.canonical(element);
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::LocalizedAtPrime:
      return s.value() == 0 ? ModuleInvariant::free(ring.pid(), 1) : ModuleInvariant::zero(ring.pid());
    case RingKind::IntegersMod: return annihilator_mod(numerator_of(s.value()), ring.modulus());
    case RingKind::TruncatedCompletion: {
      const Ring& face = ring.face();
      if (face.is_pid()) return annihilator_of(face, s);
      if (ring.is_unit(s)) return ModuleInvariant::zero(Pid::integers());
      if (truncation_is_exact(ring)) return annihilator_of(face, s);
      if (!completion_is_torsion_free(ring))
        throw Error(ErrorKind::Inconclusive, "annihilator in " + ring.display_name() + " depends on higher precision");
      // In a product of p-adic domains Ann(s) = 0 as soon as s is nonzero in
      // every factor, which is visible at precision N.
      const Integer& m = face.modulus();
      Integer x = numerator_of(s.value());
      for (const auto& [p, e] : factorize(m))
        if (x == 0 || valuation(x, p) >= e)
          throw Error(ErrorKind::Inconclusive,
                      "s vanishes modulo the precision in a " + to_string(p) + "-adic factor of " + ring.display_name());
      return ModuleInvariant{Pid::integers(), 0, {}, Validity::modulo(ring.precision())};
    }
    case RingKind::SquareZero: {
      const Ring& base = ring.base();
      const StructuredModule& mod = ring.module();
      Pid pid = base.pid();
      if (!s.module_part().empty())
        throw Error(ErrorKind::Inconclusive, "annihilators of elements with a module component are not supported");
      if (s.value() == 0) throw Error(ErrorKind::Inconclusive, "Ann(0) is the whole ring, which has no finite presentation here");
      // (s0, 0)(a, m) = (s0 a, s0 m) and the base is a domain: Ann = 0 + M[s0].
      if (mod.kind() == StructuredModule::Kind::Prufer) {
        int v = valuation(s.value(), mod.prime());
        if (v == 0) return ModuleInvariant::zero(pid);
        return cyclic(pid, Rational(power(mod.prime(), static_cast<unsigned>(v))));
      }
      std::vector<Rational> orders;
      for (const auto& d : mod.summands())
        if (d != 0) orders.push_back(pid.gcd(d, s.value()));
      return ModuleInvariant::from_cyclic(pid, orders);
    }
  }
  throw Error(ErrorKind::UnsupportedRing, "annihilator over " + ring.display_name());
}

ModuleInvariant quotient_invariant(const IdealSpec& ideal) {
  const Ring& ring = ideal.ring;
  if (ring.is_pid()) {
    Pid pid = ring.pid();
    Rational g = 0;
    for (const auto& s : ideal.generators) g = pid.gcd(g, s.value());
    return cyclic(pid, g);
  }
  if (ring.kind() == RingKind::IntegersMod) {
    Integer g = ring.modulus();
    for (const auto& s : ideal.generators) g = gcd(g, numerator_of(s.value()));
    return cyclic(Pid::integers(), Rational(g));
  }
  if (ring.kind() == RingKind::TruncatedCompletion && ring.face().is_pid())
    return quotient_invariant(IdealSpec(ring.face(), ideal.generators));
  Quotient q = quotient_ring(ideal, 1);
  Pid pid = ring.kind() == RingKind::SquareZero ? ring.base().pid() : Pid::integers();
  if (q.ring.kind() != RingKind::IntegersMod)
    throw Error(ErrorKind::UnsupportedQuotient, "R/I is not finite for " + ring.display_name());
  Validity v;
  if (ring.kind() == RingKind::TruncatedCompletion && !truncation_is_exact(ring)) v = Validity::modulo(ring.precision());
  return cyclic(pid, Rational(q.ring.modulus()), v);
}

}  // namespace koszulkit
