#pragma once

#include "koszulkit/complex.hpp"
#include "koszulkit/module_invariant.hpp"

#include <map>
#include <vector>

namespace koszulkit {

/// H_i of a complex with an explicit presentation: cyclic generators given
/// by cycle representatives, and a coordinate map from cycles to the
/// decomposition H_i = R/o_1 + ... + R/o_g (o_j = 0 for free summands).
class HomologyGroup {
 public:
  HomologyGroup() = default;

  int degree() const { return degree_; }
  const ModuleInvariant& invariant() const { return invariant_; }
  const Pid& pid() const { return pid_; }
  const Integer& modulus() const { return modulus_; }
  std::size_t generator_count() const { return orders_.size(); }
  const std::vector<Rational>& orders() const { return orders_; }
  /// Cycle representing generator j, lifted to the coefficient PID.
  std::vector<Rational> generator(std::size_t j) const;
  /// Coordinates of the class of a cycle, each reduced modulo its order.
  std::vector<Rational> coordinates(const std::vector<Rational>& cycle) const;

  friend HomologyGroup homology_group(const FreeComplex& t, int i);

 private:
  int degree_ = 0;
  ModuleInvariant invariant_;
  Pid pid_;
  Integer modulus_ = 0;
  std::vector<Rational> orders_;
  std::vector<std::size_t> kept_;  // indices of non-trivial summands among all
  RMat generators_;                // ambient x all summands
  RMat to_cycle_coords_;           // first k rows of U_G, divided by d_j
  RMat uy_;                        // U_Y
  std::vector<Rational> all_orders_;
};

HomologyGroup homology_group(const FreeComplex& t, int i);

/// Per-degree homology invariants over the range of t.
std::map<int, ModuleInvariant> homology(const FreeComplex& t);

/// Matrix of H_i(f) in the chosen generators: column j holds the coordinates
/// of the image of source generator j.
RMat induced_map(const ChainMap& f, const HomologyGroup& source, const HomologyGroup& target);

bool is_acyclic(const FreeComplex& t);
bool is_quasi_iso(const ChainMap& f);

/// Hom in the derived category between perfect complexes: H_0(dual(a) (x) b).
ModuleInvariant hom_group(const FreeComplex& a, const FreeComplex& b);

/// Graded Hom: degree i holds H_i(dual(a) (x) b) = Hom(a, Sigma^{-i} b).
std::map<int, ModuleInvariant> graded_hom(const FreeComplex& a, const FreeComplex& b);

/// Homology of a complex over a truncated completion, read as an
/// approximation of the complex over the completion itself. Exact when the
/// truncation is exact; for torsion-free completions the differentials are
/// read p-adically for every prime p of the face, and invariant factors of
/// valuation at least the precision are treated as zero. Result tagged
/// modulo I^N. Throws Inconclusive otherwise.
std::map<int, ModuleInvariant> completed_homology(const FreeComplex& t);

}  // namespace koszulkit
