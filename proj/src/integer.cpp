#include "koszulkit/integer.hpp"

#include "koszulkit/error.hpp"

#include <cctype>

namespace koszulkit {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::UnsupportedQuotient: return "UnsupportedQuotient";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::SupportNotVerified: return "SupportNotVerified";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Error";
}

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs_value(a), y = abs_value(b);
  while (y != 0) {
    Integer r = x % y;
    x = y;
    y = r;
  }
  return x;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

Integer power(const Integer& base, unsigned exponent) {
  Integer result = 1, b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result = 1, b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Integer mod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  Integer old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorKind::InvalidArgument, "element is not invertible modulo " + to_string(m));
  return mod(old_s, m);
}

Integer rational_mod(const Rational& x, const Integer& m) {
  if (m == 1) return 0;
  return mod(numerator_of(x) * inverse_mod(denominator_of(x), m), m);
}

int valuation(Integer x, const Integer& p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, const Integer& p) {
  return valuation(numerator_of(x), p) - valuation(denominator_of(x), p);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Integer, int>> factorize(Integer n) {
  std::vector<std::pair<Integer, int>> factors;
  n = abs_value(n);
  for (Integer d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (is_integral(x)) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

Integer parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw Error(ErrorKind::Parse, "expected an integer, got '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorKind::Parse, "expected an integer, got '" + text + "'");
  Integer value(text[0] == '+' ? text.substr(1) : text);
  return value;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
  return Rational(num) / Rational(den);
}

}  // namespace koszulkit
