#include "koszulkit/pid.hpp"

#include "koszulkit/error.hpp"

namespace koszulkit {

Rational Pid::canonical(const Rational& x) const {
  if (kind_ == PidKind::PrimeField) return Rational(rational_mod(x, prime_));
  return x;
}

bool Pid::is_unit(const Rational& x) const {
  switch (kind_) {
    case PidKind::Integers: return x == 1 || x == -1;
    case PidKind::Rationals:
    case PidKind::PrimeField: return x != 0;
    case PidKind::LocalizedAtPrime: return x != 0 && numerator_of(x) % prime_ != 0;
  }
  return false;
}

Rational Pid::inverse(const Rational& unit) const {
  if (!is_unit(unit)) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit " + to_string(unit));
  if (kind_ == PidKind::PrimeField) return Rational(inverse_mod(numerator_of(unit), prime_));
  return Rational(1) / unit;
}

Integer Pid::size(const Rational& x) const {
  switch (kind_) {
    case PidKind::Integers: return abs_value(numerator_of(x));
    case PidKind::LocalizedAtPrime: return valuation(numerator_of(x), prime_);
    default: return 0;
  }
}

std::pair<Rational, Rational> Pid::divmod(const Rational& a, const Rational& b) const {
  if (b == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  switch (kind_) {
    case PidKind::Integers: {
      Integer q = numerator_of(a) / numerator_of(b);
      return {Rational(q), Rational(numerator_of(a) - q * numerator_of(b))};
    }
    case PidKind::LocalizedAtPrime:
      if (a == 0 || size(a) >= size(b)) return {a / b, Rational(0)};
      return {Rational(0), a};
    case PidKind::Rationals: return {a / b, Rational(0)};
    case PidKind::PrimeField: return {mul(a, inverse(b)), Rational(0)};
  }
  return {Rational(0), a};
}

bool Pid::divides(const Rational& d, const Rational& x) const {
  if (x == 0) return true;
  if (d == 0) return false;
  return divmod(x, d).second == 0;
}

Rational Pid::normalizing_unit(const Rational& x) const {
  if (x == 0) return 1;
  switch (kind_) {
    case PidKind::Integers: return x < 0 ? Rational(-1) : Rational(1);
    case PidKind::LocalizedAtPrime: {
      Integer pv = power(prime_, static_cast<unsigned>(valuation(numerator_of(x), prime_)));
      return Rational(pv) / x;
    }
    default: return inverse(x);
  }
}

Rational Pid::reduce(const Rational& x, const Rational& d) const {
  if (d == 0) return canonical(x);
  if (is_unit(d)) return 0;
  switch (kind_) {
    case PidKind::Integers: return Rational(mod(numerator_of(x), abs_value(numerator_of(d))));
    case PidKind::LocalizedAtPrime: return Rational(rational_mod(x, numerator_of(normalize(d))));
    default: return 0;
  }
}

Rational Pid::gcd(const Rational& a, const Rational& b) const {
  Rational x = a, y = b;
  while (y != 0) {
    Rational r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return normalize(x);
}

std::string Pid::name() const {
  switch (kind_) {
    case PidKind::Integers: return "Z";
    case PidKind::Rationals: return "Q";
    case PidKind::PrimeField: return "F" + to_string(prime_);
    case PidKind::LocalizedAtPrime: return "Z_(" + to_string(prime_) + ")";
  }
  return "?";
}

}  // namespace koszulkit
