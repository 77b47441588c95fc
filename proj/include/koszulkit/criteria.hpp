#pragma once

#include "koszulkit/completion.hpp"
#include "koszulkit/complex.hpp"
#include "koszulkit/module_invariant.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszulkit {

/// H_i(Kos_R(s)) against H_i(Kos(s) (x) R^) in one degree.
struct DegreeComparison {
  int degree = 0;
  ModuleInvariant lhs;
  ModuleInvariant rhs;
  bool agree = false;
  /// rhs unchanged between precision N - 1 and N (or exact).
  bool stable = false;
};

struct KoszulCompletenessVerdict {
  IdealSpec ideal;
  int precision = 0;
  std::string verdict;  // complete | not_complete | inconclusive
  std::vector<DegreeComparison> per_degree;
  std::optional<int> witness_degree;
  /// The completed side vanishes at every precision (class argument).
  bool rhs_vanishes_always = false;
  std::string reason;

  int exit_code() const;
  json to_json() const;
};

KoszulCompletenessVerdict koszul_complete_check(const IdealSpec& ideal, int precision);

struct HomComparison {
  std::string verdict;  // isomorphic | differs | inconclusive
  std::map<int, ModuleInvariant> lhs;  // graded Hom over R
  std::map<int, ModuleInvariant> rhs;  // graded Hom over the truncated completion
  int annihilation_exponent = 0;       // smallest m with I^m killing the R side
  int precision = 0;                   // precision actually used
  std::string reason;

  int exit_code() const;
  json to_json() const;
};

/// Homology of t is killed by a power of every generator.
bool supported_on(const FreeComplex& t, const IdealSpec& ideal);

/// Graded Hom(a, b) over R against the same over the truncated completion,
/// at a precision chosen from the annihilation exponent of the R side and
/// raised until the answer is stable. Throws SupportNotVerified.
HomComparison hom_set_comparison(const FreeComplex& a, const FreeComplex& b, const IdealSpec& ideal,
                                 int initial_precision);

/// Degrees of nonzero homology: (bottom, top), or nullopt for an acyclic complex.
std::optional<std::pair<int, int>> homology_span(const FreeComplex& t);

struct DescentStep {
  int bottom = 0;                 // lowest degree of nonzero mod-I homology of d
  std::size_t rank = 0;           // rank of the free summand P
  Matrix idempotent;              // projection onto the cover, lifted to R
  ChainMap g;                     // P[bottom] -> d
  FreeComplex next;               // d' with d' -> P -> d -> d'[1]
  int amplitude_before = -1;
  int amplitude_after = -1;

  json to_json() const;
};

/// Top minus bottom degree of nonzero homology of t (mod I), -1 when acyclic.
int mod_amplitude(const FreeComplex& t, const IdealSpec& ideal);

/// One step of the descent: cover the lowest mod-I homology of d by a free
/// summand, and pass to the fiber. The ring must be Z/p^k with I = (p).
/// Throws ZeroInput when d is acyclic modulo I.
DescentStep amplitude_descent_step(const FreeComplex& d, const IdealSpec& ideal);

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string expected;
  std::string actual;
  json details;

  bool passed() const { return expected == actual; }
  json to_json() const;
};

std::vector<std::string> gallery_names();
/// Runs one preset; p is the prime for presets that take one.
GalleryEntry gallery(const std::string& name, const Integer& p);
std::vector<GalleryEntry> counterexample_gallery();

}  // namespace koszulkit
