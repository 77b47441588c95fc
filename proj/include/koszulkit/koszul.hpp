#pragma once

#include "koszulkit/complex.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/module_invariant.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace koszulkit {

/// Kos(s) = cone(s_1) (x) ... (x) cone(s_r), concentrated in degrees r..0.
FreeComplex koszul(const IdealSpec& ideal);

/// The degree-0 map p_n : k^(n) -> R/I^(n) and its checks.
struct Augmentation {
  int n = 1;
  Quotient quotient;
  /// p_n kills the image of d_1.
  bool kills_boundaries = false;
  /// can o p_n = p_{n-1} o q_n on the generator of degree 0 and on sample elements.
  bool square_commutes = false;
};

/// The inverse system k^(n) = Kos(s_1^n, ..., s_r^n) with q_n : k^(n) -> k^(n-1)
/// given factorwise by s_i in degree 1 and the identity in degree 0.
/// Stages are built on demand and cached; the cache is guarded so a tower
/// can be shared between threads.
class KoszulTower {
 public:
  explicit KoszulTower(IdealSpec ideal) : ideal_(std::move(ideal)) {}

  const IdealSpec& ideal() const { return ideal_; }
  std::size_t length() const { return ideal_.size(); }

  FreeComplex stage(int n) const;
  /// q_n, n >= 2.
  ChainMap map_q(int n) const;
  /// q_{m+1} o ... o q_n : k^(n) -> k^(m), m <= n.
  ChainMap transition(int n, int m) const;

  Augmentation augmentation(int n) const;

  /// H_i(l^(n)) for l^(n) the fiber of p_n: H_i(k^(n)) for i >= 1, 0 for i <= 0.
  std::map<int, ModuleInvariant> ell_homology(int n) const;

  /// Per-stage report: ranks, homology, commuting-square status.
  json stage_report(int n) const;

 private:
  IdealSpec ideal_;
  mutable std::mutex mutex_;
  mutable std::map<int, FreeComplex> stages_;
  mutable std::map<int, ChainMap> maps_;
};

/// H_0 and H_1 of Kos(s) for a single element, computed through R/(s) and
/// Ann(s); works over square-zero rings and truncated completions.
std::pair<ModuleInvariant, ModuleInvariant> koszul_principal_homology(const IdealSpec& ideal);

}  // namespace koszulkit
