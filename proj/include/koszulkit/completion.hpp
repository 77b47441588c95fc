#pragma once

#include "koszulkit/complex.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/module_invariant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszulkit {

/// The rings R/I^n, n = 1..N, with their reduction maps.
class RingTower {
 public:
  RingTower(IdealSpec ideal, int length);

  const IdealSpec& ideal() const { return ideal_; }
  int length() const { return static_cast<int>(stages_.size()); }
  /// Stage n (1-based).
  const Quotient& stage(int n) const { return stages_.at(static_cast<std::size_t>(n - 1)); }
  /// The canonical surjection R/I^n -> R/I^m for m <= n.
  Element reduce(const Element& x, int n, int m) const;
  /// The truncated completion whose face is stage N.
  Ring truncated_completion() const;

 private:
  IdealSpec ideal_;
  std::vector<Quotient> stages_;
};

RingTower classical_completion_tower(const IdealSpec& ideal, int n);

/// A module handed to the completion checks.
class ModuleSpec {
 public:
  enum class Kind { FinitelyPresented, Prufer, FractionField, RingItself };

  /// coker(relations) over a PID or Z/m; one row per generator.
  static ModuleSpec finitely_presented(const Ring& ring, const Matrix& relations);
  static ModuleSpec free(const Ring& ring, std::size_t rank);
  static ModuleSpec cyclic(const Ring& ring, const Element& order);
  /// Q/Z_(p) over Z or Z_(p).
  static ModuleSpec prufer(const Ring& ring, const Integer& p);
  /// The fraction field Q over Z or Z_(p).
  static ModuleSpec fraction_field(const Ring& ring);
  /// R as a module over itself; reduces to a finitely presented module when possible.
  static ModuleSpec ring_itself(const Ring& ring);
  /// Names: Z, R, Z/<m>, Q, Prufer[:p], or a JSON descriptor.
  static ModuleSpec parse(const std::string& text, const Ring& ring, const Integer& default_prime);

  Kind kind() const { return kind_; }
  const Ring& ring() const { return ring_; }
  const Integer& prime() const { return prime_; }
  /// Presentation over the coefficient PID (Z/m-modules are presented over Z
  /// with the extra relations m * I). Only for FinitelyPresented.
  const RMat& relations() const { return relations_; }
  const Pid& pid() const { return pid_; }
  ModuleInvariant invariant() const;
  std::string text() const;
  json to_json() const;

 private:
  Kind kind_ = Kind::FinitelyPresented;
  Ring ring_;
  Pid pid_;
  Integer prime_ = 0;
  RMat relations_;
};

/// The tower M/I^n M for n = 1..N.
struct ModuleCompletion {
  std::vector<ModuleInvariant> stages;
  /// First n with stages n, n+1, ..., N all equal, if that happens before N.
  std::optional<int> stabilized_at;
  /// The tower stabilized to M itself, certifying M = lim M/I^n M.
  bool classically_complete = false;
  ModuleInvariant at_precision() const { return stages.back(); }
  json to_json() const;
};

ModuleCompletion complete_module(const ModuleSpec& m, const IdealSpec& ideal, int n);

/// F = E mod I with F^2 = F mod I^n at every stage, by F -> 3F^2 - 2F^3.
struct IdempotentLift {
  std::vector<Matrix> stages;  // over tower.stage(n).ring, n = 1..N
  bool verified = false;       // F_n^2 = F_n and F_n = E mod I at every stage
  const Matrix& result() const { return stages.back(); }
};

/// E must be idempotent over the first stage ring R/I; throws NotIdempotent otherwise.
IdempotentLift idempotent_lift(const Matrix& e, const RingTower& tower, int n);

/// Per-degree findings about the tower H_i(k^(n) (x) t).
struct DegreeReport {
  int degree = 0;
  std::vector<ModuleInvariant> stages;
  /// Images of the eventual tower in each stage n < N.
  std::vector<ModuleInvariant> stable_images;
  std::optional<int> ml_at;
  std::string lim_kind;  // "stable", "pro-cyclic", "pro"
  ModuleInvariant lim;   // stable value, or the stage-N truncation of the image tower
  std::string lim1;      // "vanishes", "inconclusive"
  std::optional<ModuleInvariant> holim;  // H_i(holim) when it is a stable invariant
  bool holim_is_lim = false;             // lim^1 H_{i+1} vanishes, so H_i(holim) = lim H_i
  json to_json(const std::string& generator) const;
};

struct CompletionReport {
  int precision = 0;
  std::string generator;  // rendering of the ideal generator for pro-cyclic limits
  std::vector<DegreeReport> degrees;
  std::string verdict;    // "determined" or "inconclusive"
  const DegreeReport& degree(int i) const;
  json to_json() const;
};

/// Homotopy limit of k^(n) (x) t along the Koszul tower, through the
/// Milnor sequence 0 -> lim^1 H_{i+1} -> H_i(holim) -> lim H_i -> 0.
CompletionReport derived_completion(const FreeComplex& t, const IdealSpec& ideal, int n);

/// K-term truncation of f_s: R^K -> R^K in degrees 1, 0 with matrix 1 - s*tau
/// (ones on the diagonal, -s on the superdiagonal).
FreeComplex f_s_truncation(const Ring& ring, const Element& s, int k);

/// Three-valued outcome of a completion check.
struct CheckResult {
  std::string check;
  std::string verdict;  // complete | not_complete | separated | not_separated | inconclusive
  json witness;         // null when there is none
  std::string reason;
  int precision = 0;
  int exit_code() const;
  json to_json() const;
};

CheckResult derived_complete_check(const ModuleSpec& m, const Element& s, int n);
CheckResult separatedness_check(const ModuleSpec& m, const IdealSpec& ideal, int n);

}  // namespace koszulkit
