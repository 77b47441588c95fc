#pragma once

#include "koszulkit/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace koszulkit {

/// Outcome of a randomized property check; failures carry replay text.
struct PropertyReport {
  std::string name;
  int instances = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty() && instances > 0; }
  json to_json() const;
};

/// Tower laws over `ring` for r <= max_r generators and stages n <= max_n: the
/// augmentation square commutes, H_0(k^(n)) = R/I^(n), I^(n) kills H_i(l^(n))
/// for i >= 1, and rank(k^(n)_j) = binomial(r, j).
PropertyReport check_tower_laws(const Ring& ring, int max_r, int max_n, std::uint64_t seed, int count);

/// H_0(R/I^(n) (x) t) = 0 forces H_0(k^(n) (x) t) = 0 and H_1(k^(n) (x) t) = H_1(R/I^(n) (x) t).
PropertyReport check_reduction_vanishing(std::uint64_t seed, int count);

/// Over Z/p^2: a complex whose reduction mod p has homology in degrees >= a
/// has homology in degrees >= a.
PropertyReport check_nilpotent_bound(const Integer& p, std::uint64_t seed, int count);

/// Over Z/p^N with I = (p): H_0(t mod p) = 0 forces the degree-0 limit of the
/// derived completion of t to vanish.
PropertyReport check_vanishing_limit(const Integer& p, int big_n, std::uint64_t seed, int count);

/// If Kos(s) (x) d has homology in [a, b], so does k^(n) (x) d.
PropertyReport check_stage_bounds(std::uint64_t seed, int count);

/// Reduced to R/I^(n), the stage k^(m) (m >= n) has zero differentials and
/// homology (R/I^(n))^binomial(r, i) in degree i.
PropertyReport check_reduced_stage(std::uint64_t seed, int count);

}  // namespace koszulkit
