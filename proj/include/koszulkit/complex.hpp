#pragma once

#include "koszulkit/ring.hpp"

#include <cstddef>
#include <vector>

namespace koszulkit {

/// Bounded complex of finite-rank free modules, homologically indexed:
/// d_i : C_i -> C_{i-1} is a rank(i-1) x rank(i) matrix acting on columns.
/// Construction checks dimensions and d_{i-1} d_i = 0 exactly.
class FreeComplex {
 public:
  FreeComplex() = default;
  /// ranks[k] is the rank in degree lo + k; diffs[k] is d_{lo+k} (diffs[0] is ignored
  /// and may be omitted: pass ranks.size() - 1 matrices for d_{lo+1} .. d_hi).
  FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs);

  /// The unit object: R in degree 0.
  static FreeComplex unit(const Ring& ring);
  /// R --s--> R in degrees 1, 0.
  static FreeComplex two_term(const Ring& ring, const Element& s);
  static FreeComplex zero(const Ring& ring);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int i) const;
  /// d_i, the zero matrix of the right shape outside the range.
  Matrix d(int i) const;
  std::size_t total_rank() const;
  bool is_zero() const { return total_rank() == 0; }

  json to_json() const;
  static FreeComplex from_json(const json& value, const Ring* ring = nullptr);

  bool operator==(const FreeComplex& other) const;

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_{0};
  std::vector<Matrix> diffs_{Matrix()};  // diffs_[k] = d_{lo+k}; diffs_[0] is 0 x rank(lo)
};

/// Degree-preserving chain map; component(i) is target.rank(i) x source.rank(i).
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(FreeComplex source, FreeComplex target, std::vector<Matrix> components, int lo);

  static ChainMap identity(const FreeComplex& c);
  static ChainMap zero(const FreeComplex& source, const FreeComplex& target);
  /// Multiplication by s on the unit object.
  static ChainMap scalar(const Ring& ring, const Element& s);

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }
  Matrix component(int i) const;

  json to_json() const;

 private:
  FreeComplex source_, target_;
  int lo_ = 0;
  std::vector<Matrix> comps_;
};

struct Cone {
  FreeComplex complex;
  ChainMap inclusion;   // target -> cone
  ChainMap projection;  // cone -> shift(source, 1)
};

/// cone(f)_i = B_i + A_{i-1} with differential [[d_B, f], [0, -d_A]].
Cone cone(const ChainMap& f);
/// Degree i of the result is degree i - k of t; differentials pick up (-1)^k.
FreeComplex shift(const FreeComplex& t, int k);
/// Total complex; on a_p (x) b_q the differential is d_a (x) 1 + (-1)^p 1 (x) d_b.
/// Summands of a degree are ordered by ascending p, each in Kronecker order.
FreeComplex tensor(const FreeComplex& a, const FreeComplex& b);
ChainMap tensor(const ChainMap& f, const ChainMap& g);
/// (a^v)_i = (a_{-i})^*, d^v_i = (d_{1-i})^T. An involution on the nose.
FreeComplex dual(const FreeComplex& a);
FreeComplex base_change(const FreeComplex& t, const RingMap& phi);
ChainMap base_change(const ChainMap& f, const RingMap& phi);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap shift(const ChainMap& f, int k);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
/// t with the basis of degree i changed by the invertible matrix g (new = g * old coordinates).
FreeComplex change_basis(const FreeComplex& t, int i, const Matrix& g, const Matrix& g_inv);

}  // namespace koszulkit
