#pragma once

#include "koszulkit/integer.hpp"
#include "koszulkit/mat.hpp"
#include "koszulkit/pid.hpp"

#include <vector>

namespace koszulkit {

using RMat = Mat<Rational>;

/// U * A * V = D with D diagonal, d_1 | d_2 | ... | d_rank, zeros after.
/// The inverses of U and V are tracked alongside.
struct SmithForm {
  RMat d;
  RMat u;
  RMat v;
  RMat u_inv;
  RMat v_inv;
  std::size_t rank = 0;

  /// Diagonal entries d_0 .. d_{min(m,n)-1}.
  std::vector<Rational> diagonal() const;
};

RMat identity_matrix(std::size_t n);
RMat multiply(const Pid& pid, const RMat& a, const RMat& b);

SmithForm smith_form(const Pid& pid, const RMat& a);

/// Invariant factors only (no transforms).
std::vector<Rational> invariant_factors(const Pid& pid, const RMat& a);

/// Determinant over the fraction field (reduced mod p over F_p).
Rational determinant(const Pid& pid, const RMat& a);

/// Columns spanning {x : A x = 0}.
RMat kernel_basis(const Pid& pid, const RMat& a);

/// Solves A x = b over the PID; returns false if no solution exists.
bool solve(const Pid& pid, const RMat& a, const std::vector<Rational>& b, std::vector<Rational>* x = nullptr);

}  // namespace koszulkit
