#pragma once

#include "koszulkit/integer.hpp"

#include <string>
#include <utility>

namespace koszulkit {

enum class PidKind { Integers, Rationals, PrimeField, LocalizedAtPrime };

/// Arithmetic of a principal ideal domain whose elements are carried as
/// rationals: Z, Q, F_p (residues 0..p-1) and Z_(p) (denominators prime to p).
///
/// The Euclidean size is |x| over Z, the p-adic valuation over Z_(p) and
/// constant on nonzero elements over a field.
class Pid {
 public:
  Pid() = default;
  Pid(PidKind kind, Integer prime = 0) : kind_(kind), prime_(std::move(prime)) {}

  static Pid integers() { return Pid(PidKind::Integers); }
  static Pid rationals() { return Pid(PidKind::Rationals); }
  static Pid prime_field(Integer p) { return Pid(PidKind::PrimeField, std::move(p)); }
  static Pid localized(Integer p) { return Pid(PidKind::LocalizedAtPrime, std::move(p)); }

  PidKind kind() const noexcept { return kind_; }
  const Integer& prime() const noexcept { return prime_; }
  bool is_field() const noexcept { return kind_ == PidKind::Rationals || kind_ == PidKind::PrimeField; }

  Rational canonical(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const { return canonical(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return canonical(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return canonical(a * b); }
  Rational neg(const Rational& a) const { return canonical(-a); }

  bool is_unit(const Rational& x) const;
  Rational inverse(const Rational& unit) const;

  /// Euclidean size; only meaningful for nonzero x.
  Integer size(const Rational& x) const;

  /// a = q*b + r with r = 0 or size(r) < size(b).
  std::pair<Rational, Rational> divmod(const Rational& a, const Rational& b) const;
  bool divides(const Rational& d, const Rational& x) const;

  /// Unit u such that x*u is the canonical associate (positive integer over Z,
  /// p^v over Z_(p), 1 over a field). Returns 1 for x = 0.
  Rational normalizing_unit(const Rational& x) const;
  Rational normalize(const Rational& x) const { return mul(x, normalizing_unit(x)); }

  /// Canonical representative of x modulo the ideal (d); d = 0 means no reduction.
  Rational reduce(const Rational& x, const Rational& d) const;

  /// Canonical associate of gcd(a, b).
  Rational gcd(const Rational& a, const Rational& b) const;

  bool operator==(const Pid&) const = default;
  std::string name() const;

 private:
  PidKind kind_ = PidKind::Integers;
  Integer prime_ = 0;
};

}  // namespace koszulkit
