#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace koszulkit {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }
inline bool is_integral(const Rational& x) { return denominator_of(x) == 1; }

Integer abs_value(const Integer& x);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer power(const Integer& base, unsigned exponent);
Rational power(const Rational& base, unsigned exponent);

/// Least nonnegative residue of x modulo m (m > 0).
Integer mod(const Integer& x, const Integer& m);

/// Inverse of a modulo m; requires gcd(a, m) = 1. Returns 0 when m = 1.
Integer inverse_mod(const Integer& a, const Integer& m);

/// Residue of a rational with denominator coprime to m.
Integer rational_mod(const Rational& x, const Integer& m);

/// p-adic valuation of a nonzero integer.
int valuation(Integer x, const Integer& p);
/// p-adic valuation of a nonzero rational.
int valuation(const Rational& x, const Integer& p);

bool is_prime(const Integer& n);
/// Prime factorization by trial division; only used on small moduli.
std::vector<std::pair<Integer, int>> factorize(Integer n);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace koszulkit
