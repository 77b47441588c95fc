#pragma once

#include "koszulkit/pid.hpp"
#include "koszulkit/ring.hpp"

#include <string>
#include <utility>
#include <vector>

namespace koszulkit {

/// Whether an answer is exact or only known modulo I^N.
struct Validity {
  bool exact = true;
  int precision = 0;

  static Validity modulo(int n) { return Validity{false, n}; }
  std::string text() const { return exact ? "exact" : "modulo I^" + std::to_string(precision); }
  /// The weaker of two validities.
  Validity meet(const Validity& other) const;
};

/// Isomorphism class of a finitely generated module over a PID (or over
/// Z/m, presented as a Z-module): R^free_rank + R/d_1 + ... + R/d_k with
/// d_1 | ... | d_k nonzero nonunits in canonical associate form.
struct ModuleInvariant {
  Pid pid;
  std::size_t free_rank = 0;
  std::vector<Rational> torsion;
  Validity validity;

  static ModuleInvariant zero(const Pid& pid) { return ModuleInvariant{pid, 0, {}, {}}; }
  static ModuleInvariant free(const Pid& pid, std::size_t rank) { return ModuleInvariant{pid, rank, {}, {}}; }
  /// Normalizes an arbitrary list of cyclic orders (0 = free, units dropped).
  static ModuleInvariant from_cyclic(const Pid& pid, const std::vector<Rational>& orders, Validity v = {});

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// Number of cyclic summands in the canonical decomposition.
  std::size_t minimal_generators() const { return free_rank + torsion.size(); }

  /// Prime-power decomposition of the torsion part, sorted; over a field empty.
  std::vector<std::pair<Integer, int>> primary_parts() const;
  /// s * M = 0.
  bool killed_by(const Rational& s) const;
  /// Smallest m with (g^m) killing the module, or -1 when no power does.
  int annihilation_exponent(const Rational& g) const;

  json to_json() const;
  std::string text() const;

  /// Equality of isomorphism classes (validity is not compared).
  bool operator==(const ModuleInvariant& other) const;
};

/// Same free rank and same primary torsion, even across different PIDs
/// (e.g. a Z-module and a Z_(p)-module with p-primary torsion).
bool same_primary_structure(const ModuleInvariant& a, const ModuleInvariant& b);

ModuleInvariant direct_sum(const ModuleInvariant& a, const ModuleInvariant& b);
ModuleInvariant tensor(const ModuleInvariant& a, const ModuleInvariant& b);

/// Coefficient PID for modules over a ring, with the modulus (0 if none)
/// under which Z/m-modules are computed as Z-modules.
struct CoefficientDomain {
  Pid pid;
  Integer modulus = 0;
  Validity validity;
};

/// Throws UnsupportedRing for square-zero rings.
CoefficientDomain coefficient_domain(const Ring& ring);

/// Invariant of (target of A) / im(A); A has one row per target generator.
ModuleInvariant cokernel_invariant(const Matrix& a, const Ring& ring);
ModuleInvariant cokernel_invariant(const RMat& a, const Pid& pid);

/// Ann_R(s) as an R-module.
ModuleInvariant annihilator_of(const Ring& ring, const Element& s);

/// Invariant of R / (s_1, ..., s_r) as a module over (the coefficient PID of) R.
ModuleInvariant quotient_invariant(const IdealSpec& ideal);

}  // namespace koszulkit
