#include "koszulkit/ring.hpp"

#include "koszulkit/error.hpp"

#include <algorithm>

namespace koszulkit {

struct RingData {
  RingKind kind = RingKind::Integers;
  Integer number = 0;  // modulus for IntegersMod, prime for PrimeField / LocalizedAtPrime
  Integer prime = 0;   // distinguished prime, 0 if none
  std::optional<Ring> base;
  std::optional<Ring> face;
  std::vector<Element> ideal;
  int precision = 0;
  std::shared_ptr<const StructuredModule> module;
  std::string name;
};

namespace {

std::shared_ptr<RingData> make_data(RingKind kind, Integer number = 0) {
  auto d = std::make_shared<RingData>();
  d->kind = kind;
  d->number = std::move(number);
  return d;
}

void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Ring::Ring() : Ring(integers()) {}

Ring Ring::integers() {
  static const Ring z = [] {
    auto d = make_data(RingKind::Integers);
    d->name = json{{"kind", "Z"}}.dump();
    return Ring(d);
  }();
  return z;
}

Ring Ring::integers_mod(const Integer& m) {
  require(m >= 1, ErrorKind::InvalidArgument, "IntegersMod needs a positive modulus");
  auto d = make_data(RingKind::IntegersMod, m);
  if (auto f = factorize(m); f.size() == 1) d->prime = f.front().first;
  d->name = json{{"kind", "Zmod"}, {"m", to_string(m)}}.dump();
  return Ring(d);
}

Ring Ring::rationals() {
  auto d = make_data(RingKind::Rationals);
  d->name = json{{"kind", "Q"}}.dump();
  return Ring(d);
}

Ring Ring::prime_field(const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "PrimeField needs a prime, got " + to_string(p));
  auto d = make_data(RingKind::PrimeField, p);
  d->name = json{{"kind", "Fp"}, {"p", to_string(p)}}.dump();
  return Ring(d);
}

Ring Ring::localized(const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "LocalizedAtPrime needs a prime, got " + to_string(p));
  auto d = make_data(RingKind::LocalizedAtPrime, p);
  d->name = json{{"kind", "ZLoc"}, {"p", to_string(p)}}.dump();
  return Ring(d);
}

Ring Ring::truncated_completion(const Ring& base, std::vector<Element> ideal, int precision) {
  require(precision >= 1, ErrorKind::InvalidArgument, "precision must be positive");
  require(base.kind() != RingKind::TruncatedCompletion, ErrorKind::UnsupportedRing,
          "nested truncated completions are not supported");
  IdealSpec spec(base, std::move(ideal));
  Quotient q = quotient_ring(spec, static_cast<unsigned>(precision));
  auto d = make_data(RingKind::TruncatedCompletion);
  d->base = base;
  d->face = q.ring;
  d->ideal = spec.generators;
  d->precision = precision;
  json gens = json::array();
  for (const auto& g : spec.generators) gens.push_back(base.render(g));
  d->name = json{{"kind", "TruncComp"}, {"base", base.descriptor()}, {"ideal", gens}, {"precision", precision}}.dump();
  return Ring(d);
}

Ring Ring::square_zero(const Ring& base, std::shared_ptr<const StructuredModule> module) {
  require(base.kind() == RingKind::Integers || base.kind() == RingKind::LocalizedAtPrime,
          ErrorKind::UnsupportedRing, "square-zero extensions need base Z or Z_(p)");
  require(module != nullptr, ErrorKind::InvalidArgument, "missing module");
  auto d = make_data(RingKind::SquareZero);
  d->base = base;
  d->module = std::move(module);
  d->name = json{{"kind", "SquareZero"}, {"base", base.descriptor()}, {"module", d->module->descriptor()}}.dump();
  return Ring(d);
}

Ring Ring::exa_no(const Integer& p) {
  Ring base = localized(p);
  return square_zero(base, StructuredModule::prufer(base, p));
}

// ---------------------------------------------------------------------------
// Accessors

RingKind Ring::kind() const { return data_->kind; }

const Integer& Ring::modulus() const {
  if (kind() != RingKind::IntegersMod) throw Error(ErrorKind::InvalidArgument, "modulus() on " + display_name());
  return data_->number;
}

const Integer& Ring::prime() const {
  static const Integer none = 0;
  switch (kind()) {
    case RingKind::PrimeField:
    case RingKind::LocalizedAtPrime: return data_->number;
    case RingKind::IntegersMod: return data_->prime;
    case RingKind::TruncatedCompletion: return data_->base->prime();
    case RingKind::SquareZero:
      if (data_->module->kind() == StructuredModule::Kind::Prufer) return data_->module->prime();
      return data_->base->prime();
    default: return none;
  }
}

const Ring& Ring::base() const {
  if (!data_->base) throw Error(ErrorKind::InvalidArgument, "base() on " + display_name());
  return *data_->base;
}

const std::vector<Element>& Ring::completion_ideal() const { return data_->ideal; }
int Ring::precision() const { return data_->precision; }

const Ring& Ring::face() const {
  if (!data_->face) throw Error(ErrorKind::InvalidArgument, "face() on " + display_name());
  return *data_->face;
}

const StructuredModule& Ring::module() const {
  if (!data_->module) throw Error(ErrorKind::InvalidArgument, "module() on " + display_name());
  return *data_->module;
}

bool Ring::is_pid() const {
  switch (kind()) {
    case RingKind::Integers:
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::LocalizedAtPrime: return true;
    default: return false;
  }
}

Pid Ring::pid() const {
  switch (kind()) {
    case RingKind::Integers: return Pid::integers();
    case RingKind::Rationals: return Pid::rationals();
    case RingKind::PrimeField: return Pid::prime_field(data_->number);
    case RingKind::LocalizedAtPrime: return Pid::localized(data_->number);
    default: throw Error(ErrorKind::UnsupportedRing, display_name() + " is not a principal ideal domain");
  }
}

bool Ring::is_zero_ring() const {
  if (kind() == RingKind::IntegersMod) return data_->number == 1;
  if (kind() == RingKind::TruncatedCompletion) return face().is_zero_ring();
  return false;
}

// ---------------------------------------------------------------------------
// Arithmetic

Element Ring::one() const { return from_integer(1); }

Element Ring::from_integer(const Integer& n) const { return canonical(Element(Rational(n))); }

Element Ring::canonical(const Element& x) const {
  const Rational& v = x.value();
  switch (kind()) {
    case RingKind::Integers:
      if (!(is_integral(v) && x.module_part().empty())) throw Error(ErrorKind::InvalidArgument, to_string(v) + " is not in Z");
      return Element(v);
    case RingKind::IntegersMod:
      return Element(Rational(rational_mod(v, data_->number)));
    case RingKind::Rationals: return Element(v);
    case RingKind::PrimeField: return Element(Rational(rational_mod(v, data_->number)));
    case RingKind::LocalizedAtPrime:
      if (denominator_of(v) % data_->number == 0) throw Error(ErrorKind::InvalidArgument, to_string(v) + " is not in " + display_name());
      return Element(v);
    case RingKind::TruncatedCompletion: return face().canonical(x);
    case RingKind::SquareZero: {
      Element a = base().canonical(Element(v));
      return Element(a.value(), module().canonical(x.module_part()));
    }
  }
  return x;
}

Element Ring::add(const Element& a, const Element& b) const {
  if (kind() == RingKind::TruncatedCompletion) return face().add(a, b);
  if (kind() == RingKind::SquareZero)
    return Element(base().add(a.value(), b.value()).value(), module().add(a.module_part(), b.module_part()));
  return canonical(Element(a.value() + b.value()));
}

Element Ring::neg(const Element& a) const {
  if (kind() == RingKind::TruncatedCompletion) return face().neg(a);
  if (kind() == RingKind::SquareZero)
    return Element(base().neg(a.value()).value(), module().scale(Rational(-1), a.module_part()));
  return canonical(Element(-a.value()));
}

Element Ring::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Ring::mul(const Element& a, const Element& b) const {
  if (kind() == RingKind::TruncatedCompletion) return face().mul(a, b);
  if (kind() == RingKind::SquareZero) {
    const StructuredModule& m = module();
    auto part = m.add(m.scale(a.value(), b.module_part()), m.scale(b.value(), a.module_part()));
    return Element(base().mul(a.value(), b.value()).value(), part);
  }
  return canonical(Element(a.value() * b.value()));
}

Element Ring::pow(const Element& a, unsigned n) const {
  Element result = one(), b = a;
  while (n != 0) {
    if (n & 1U) result = mul(result, b);
    n >>= 1U;
    if (n != 0) b = mul(b, b);
  }
  return result;
}

bool Ring::is_unit(const Element& a) const {
  const Rational& v = a.value();
  switch (kind()) {
    case RingKind::Integers: return v == 1 || v == -1;
    case RingKind::IntegersMod: return gcd(numerator_of(v), data_->number) == 1;
    case RingKind::Rationals:
    case RingKind::PrimeField: return v != 0;
    case RingKind::LocalizedAtPrime: return v != 0 && numerator_of(v) % data_->number != 0;
    case RingKind::TruncatedCompletion: return face().is_unit(a);
    case RingKind::SquareZero: return base().is_unit(Element(v));
  }
  return false;
}

Element Ring::inverse(const Element& a) const {
  if (!is_unit(a)) throw Error(ErrorKind::InvalidArgument, render_text(a) + " is not a unit in " + display_name());
  const Rational& v = a.value();
  switch (kind()) {
    case RingKind::IntegersMod:
      return Element(Rational(inverse_mod(numerator_of(v), data_->number)));
    case RingKind::PrimeField:
      return Element(Rational(inverse_mod(numerator_of(v), data_->number)));
    case RingKind::TruncatedCompletion: return face().inverse(a);
    case RingKind::SquareZero: {
      Element ainv = base().inverse(Element(v));
      Rational minus_sq = -(ainv.value() * ainv.value());
      return Element(ainv.value(), module().scale(minus_sq, a.module_part()));
    }
    default: return canonical(Element(Rational(1) / v));
  }
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

// "p", "p^k", "a", "a/b", "-p"
Rational parse_scalar_token(const std::string& raw, const Integer& prime) {
  std::string text = raw;
  bool negative = false;
  if (!text.empty() && text[0] == '-' && text.size() > 1 && text[1] == 'p') {
    negative = true;
    text = text.substr(1);
  }
  if (!text.empty() && text[0] == 'p') {
    require(prime != 0, ErrorKind::Parse, "'p' used for a ring without a distinguished prime");
    unsigned k = 1;
    if (text.size() > 1) {
      if (text[1] != '^') throw Error(ErrorKind::Parse, "cannot parse '" + raw + "'");
      k = static_cast<unsigned>(parse_integer(text.substr(2)));
    }
    Rational v(power(prime, k));
    return negative ? Rational(-v) : v;
  }
  return parse_rational(text);
}

Rational parse_scalar(const json& value, const Integer& prime) {
  if (value.is_number_integer()) return Rational(Integer(value.get<long long>()));
  if (value.is_string()) return parse_scalar_token(value.get<std::string>(), prime);
  throw Error(ErrorKind::Parse, "expected a scalar element, got " + value.dump());
}

}  // namespace

Element Ring::parse(const json& value) const {
  switch (kind()) {
    case RingKind::TruncatedCompletion: {
      Rational v = parse_scalar(value, prime());
      return face().canonical(Element(v));
    }
    case RingKind::SquareZero: {
      if (value.is_array()) {
        require(value.size() == 2, ErrorKind::Parse, "square-zero elements are pairs [a, m]");
        Rational a = parse_scalar(value[0], base().prime() != 0 ? base().prime() : prime());
        return canonical(Element(a, module().parse(value[1])));
      }
      return canonical(Element(parse_scalar(value, prime())));
    }
    default: return canonical(Element(parse_scalar(value, prime())));
  }
}

json Ring::render(const Element& x) const {
  if (kind() == RingKind::TruncatedCompletion) return face().render(x);
  if (kind() == RingKind::SquareZero) return json::array({to_string(x.value()), module().render(x.module_part())});
  return to_string(x.value());
}

std::string Ring::render_text(const Element& x) const {
  json j = render(x);
  if (j.is_string()) return j.get<std::string>();
  if (kind() == RingKind::SquareZero) {
    json m = j[1];
    return "(" + j[0].get<std::string>() + ", " + (m.is_string() ? m.get<std::string>() : m.dump()) + ")";
  }
  return j.dump();
}

json Ring::descriptor() const { return json::parse(data_->name); }
const std::string& Ring::name() const { return data_->name; }

std::string Ring::display_name() const {
  switch (kind()) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + to_string(data_->number);
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + to_string(data_->number);
    case RingKind::LocalizedAtPrime: return "Z_(" + to_string(data_->number) + ")";
    case RingKind::TruncatedCompletion: {
      std::string gens;
      for (const auto& g : data_->ideal) gens += (gens.empty() ? "" : ",") + base().render_text(g);
      return "TruncComp(" + base().display_name() + ", (" + gens + "), " + std::to_string(data_->precision) + ")";
    }
    case RingKind::SquareZero: {
      const auto& m = module();
      if (m.kind() == StructuredModule::Kind::Prufer) {
        std::string p = to_string(m.prime());
        return base().display_name() + " + Q/Z_(" + p + ")";
      }
      return base().display_name() + " + M";
    }
  }
  return "?";
}

bool Ring::operator==(const Ring& other) const { return data_ == other.data_ || data_->name == other.data_->name; }

// ---------------------------------------------------------------------------
// StructuredModule

std::shared_ptr<const StructuredModule> StructuredModule::prufer(const Ring& base, const Integer& p) {
  require(is_prime(p), ErrorKind::InvalidArgument, "Pruefer module needs a prime");
  require(base.kind() == RingKind::Integers ||
              (base.kind() == RingKind::LocalizedAtPrime && base.prime() == p),
          ErrorKind::UnsupportedRing, "Pruefer module Q/Z_(p) needs base Z or Z_(p)");
  auto m = std::shared_ptr<StructuredModule>(new StructuredModule());
  m->kind_ = Kind::Prufer;
  m->pid_ = base.pid();
  m->prime_ = p;
  m->generators_ = 1;
  return m;
}

std::shared_ptr<const StructuredModule> StructuredModule::finitely_presented(const Ring& base,
                                                                             const Matrix& relations) {
  auto m = std::shared_ptr<StructuredModule>(new StructuredModule());
  m->kind_ = Kind::FinitelyPresented;
  m->pid_ = base.pid();
  m->prime_ = base.prime();
  m->relations_ = relations;
  m->generators_ = relations.rows();
  SmithForm f = smith_form(m->pid_, to_rational(relations));
  m->u_ = f.u;
  m->u_inv_ = f.u_inv;
  for (std::size_t j = 0; j < m->generators_; ++j)
    m->summands_.push_back(j < f.rank ? f.d(j, j) : Rational(0));
  return m;
}

std::vector<Rational> StructuredModule::smith_coordinates(const std::vector<Rational>& x) const {
  if (kind_ == Kind::Prufer) return x;
  std::vector<Rational> c(generators_);
  if (x.empty()) return c;
  require(x.size() == generators_, ErrorKind::InvalidArgument, "module element has wrong length");
  for (std::size_t i = 0; i < generators_; ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k < generators_; ++k) acc += u_(i, k) * x[k];
    c[i] = pid_.reduce(acc, summands_[i]);
  }
  return c;
}

std::vector<Rational> StructuredModule::from_smith_coordinates(const std::vector<Rational>& c) const {
  if (kind_ == Kind::Prufer) return canonical(c);
  std::vector<Rational> x(generators_);
  bool nonzero = false;
  for (std::size_t i = 0; i < generators_; ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k < generators_; ++k) acc += u_inv_(i, k) * pid_.reduce(c[k], summands_[k]);
    x[i] = pid_.canonical(acc);
    nonzero = nonzero || x[i] != 0;
  }
  if (!nonzero) return {};
  return x;
}

std::vector<Rational> StructuredModule::canonical(const std::vector<Rational>& x) const {
  if (x.empty()) return {};
  if (kind_ == Kind::Prufer) {
    require(x.size() == 1, ErrorKind::InvalidArgument, "Pruefer elements have one coordinate");
    Rational q = x[0];
    Integer den = denominator_of(q);
    while (den % prime_ == 0) den /= prime_;
    if (den != 1) throw Error(ErrorKind::InvalidArgument, to_string(q) + " is not of the form a/p^k");
    Integer num = numerator_of(q), full = denominator_of(q);
    Integer r = mod(num, full);
    if (r == 0) return {};
    return {Rational(r) / Rational(full)};
  }
  return from_smith_coordinates(smith_coordinates(x));
}

std::vector<Rational> StructuredModule::add(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
  if (x.empty()) return y;
  if (y.empty()) return x;
  std::vector<Rational> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
  return canonical(s);
}

std::vector<Rational> StructuredModule::scale(const Rational& a, const std::vector<Rational>& x) const {
  if (x.empty() || a == 0) return {};
  if (kind_ == Kind::Prufer) {
    // a = c/d with p not dividing d acts on b/p^k through d^{-1} mod p^k.
    Integer pk = denominator_of(x[0]);
    Integer r = mod(numerator_of(a) * numerator_of(x[0]) * inverse_mod(denominator_of(a), pk), pk);
    if (r == 0) return {};
    return {Rational(r) / Rational(pk)};
  }
  std::vector<Rational> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = a * x[i];
  return canonical(s);
}

std::vector<Rational> StructuredModule::parse(const json& value) const {
  if (kind_ == Kind::Prufer) {
    require(value.is_string() || value.is_number_integer(), ErrorKind::Parse, "Pruefer values are strings a/p^k");
    if (value.is_number_integer()) return {};
    std::string text = value.get<std::string>();
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      parse_integer(text);
      return {};
    }
    Integer num = parse_integer(text.substr(0, slash));
    std::string den_text = text.substr(slash + 1);
    Integer den;
    auto caret = den_text.find('^');
    if (caret == std::string::npos) {
      den = den_text == "p" ? prime_ : parse_integer(den_text);
    } else {
      std::string b = den_text.substr(0, caret);
      Integer base_value = b == "p" ? prime_ : parse_integer(b);
      den = power(base_value, static_cast<unsigned>(parse_integer(den_text.substr(caret + 1))));
    }
    require(den != 0, ErrorKind::Parse, "zero denominator");
    return canonical({Rational(num) / Rational(den)});
  }
  if (!(value.is_array() && value.size() == generators_)) throw Error(ErrorKind::Parse, "module elements are arrays of length " + std::to_string(generators_));
  std::vector<Rational> x;
  for (const auto& v : value) {
    if (v.is_number_integer()) x.emplace_back(Integer(v.get<long long>()));
    else x.push_back(parse_rational(v.get<std::string>()));
  }
  return canonical(x);
}

json StructuredModule::render(const std::vector<Rational>& x) const {
  if (kind_ == Kind::Prufer) {
    if (x.empty()) return "0";
    Integer den = denominator_of(x[0]);
    int k = valuation(den, prime_);
    return to_string(numerator_of(x[0])) + "/" + to_string(prime_) + "^" + std::to_string(k);
  }
  json out = json::array();
  for (std::size_t i = 0; i < generators_; ++i) out.push_back(x.empty() ? std::string("0") : to_string(x[i]));
  return out;
}

json StructuredModule::descriptor() const {
  if (kind_ == Kind::Prufer) return json{{"kind", "Prufer"}, {"p", to_string(prime_)}};
  json rows = json::array();
  for (std::size_t i = 0; i < relations_.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < relations_.cols(); ++j) row.push_back(to_string(relations_(i, j).value()));
    rows.push_back(row);
  }
  return json{{"kind", "FinitelyPresented"}, {"generators", generators_}, {"relations", rows}};
}

// ---------------------------------------------------------------------------
// Ideals, quotients, maps

IdealSpec::IdealSpec(Ring r, std::vector<Element> gens) : ring(std::move(r)), generators(std::move(gens)) {
  require(!generators.empty(), ErrorKind::InvalidArgument, "an ideal needs at least one generator");
  for (auto& g : generators) g = ring.canonical(g);
}

IdealSpec IdealSpec::generator_powers(unsigned n) const {
  std::vector<Element> gens;
  for (const auto& g : generators) gens.push_back(ring.pow(g, n));
  return IdealSpec(ring, gens);
}

json IdealSpec::to_json() const {
  json gens = json::array();
  for (const auto& g : generators) gens.push_back(ring.render(g));
  return gens;
}

Rational scalar_part(const Ring&, const Element& x) { return x.value(); }

namespace {

Quotient identity_quotient(const Ring& ring) {
  auto id = [](const Element& x) { return x; };
  return Quotient{ring, RingMap{ring, ring, id, id}};
}

Quotient residue_quotient(const Ring& source, const Integer& h) {
  Ring target = Ring::integers_mod(h);
  RingMap map{source, target,
              [h](const Element& x) { return Element(Rational(rational_mod(x.value(), h))); },
              [source](const Element& x) { return source.from_integer(numerator_of(x.value())); }};
  return Quotient{target, map};
}

// Scalar generator of I^n (Powers) or I^(n) (GeneratorPowers) over Z.
Integer integer_generator(const std::vector<Integer>& gens, unsigned n, QuotientFlavor flavor) {
  Integer g = 0;
  if (flavor == QuotientFlavor::Powers) {
    for (const auto& s : gens) g = gcd(g, s);
    return power(g, n);
  }
  for (const auto& s : gens) g = gcd(g, power(s, n));
  return g;
}

}  // namespace

Quotient quotient_ring(const IdealSpec& ideal, unsigned n, QuotientFlavor flavor) {
  require(n >= 1, ErrorKind::InvalidArgument, "quotient exponent must be positive");
  const Ring& ring = ideal.ring;
  switch (ring.kind()) {
    case RingKind::Integers: {
      std::vector<Integer> gens;
      for (const auto& g : ideal.generators) gens.push_back(numerator_of(g.value()));
      Integer h = integer_generator(gens, n, flavor);
      if (h == 0) return identity_quotient(ring);
      return residue_quotient(ring, h);
    }
    case RingKind::IntegersMod: {
      std::vector<Integer> gens;
      for (const auto& g : ideal.generators) gens.push_back(numerator_of(g.value()));
      Integer h = gcd(integer_generator(gens, n, flavor), ring.modulus());
      return residue_quotient(ring, h);
    }
    case RingKind::Rationals:
    case RingKind::PrimeField: {
      bool nonzero = std::any_of(ideal.generators.begin(), ideal.generators.end(),
                                 [&](const Element& g) { return !ring.is_zero(g); });
      return nonzero ? residue_quotient(ring, 1) : identity_quotient(ring);
    }
    case RingKind::LocalizedAtPrime: {
      const Integer& p = ring.prime();
      std::optional<int> v;
      for (const auto& g : ideal.generators)
        if (g.value() != 0) {
          int vg = valuation(g.value(), p);
          v = v ? std::min(*v, vg) : vg;
        }
      if (!v) return identity_quotient(ring);
      // Both flavors give (p^{v n}) in a discrete valuation ring.
      return residue_quotient(ring, power(p, static_cast<unsigned>(*v) * n));
    }
    case RingKind::SquareZero: {
      const Ring& base = ring.base();
      require(ring.module().kind() == StructuredModule::Kind::Prufer, ErrorKind::UnsupportedQuotient,
              "quotients of square-zero rings with finitely presented module are not representable");
      std::vector<Element> firsts;
      bool any_nonzero = false;
      for (const auto& g : ideal.generators) {
        firsts.emplace_back(g.value());
        any_nonzero = any_nonzero || g.value() != 0;
      }
      require(any_nonzero, ErrorKind::UnsupportedQuotient,
              "ideal inside the square-zero part: quotient is not representable");
      // A nonzero scalar generator absorbs the divisible Pruefer part, so
      // R / I^n = base / (scalar generators)^n.
      Quotient bq = quotient_ring(IdealSpec(base, firsts), n, flavor);
      RingMap map{ring, bq.ring,
                  [f = bq.map.apply](const Element& x) { return f(Element(x.value())); },
                  [ring, l = bq.map.lift](const Element& x) { return ring.canonical(Element(l(x).value())); }};
      return Quotient{bq.ring, map};
    }
    case RingKind::TruncatedCompletion: {
      const Ring& face = ring.face();
      if (face.is_pid()) {
        Quotient fq = quotient_ring(IdealSpec(face, ideal.generators), n, flavor);
        return Quotient{fq.ring, RingMap{ring, fq.ring, fq.map.apply,
                                          [ring, l = fq.map.lift](const Element& x) {
                                            return ring.canonical(l(x));
                                          }}};
      }
      const Integer& m = face.modulus();
      std::vector<Integer> gens;
      for (const auto& g : ideal.generators) gens.push_back(numerator_of(g.value()));
      Integer raw = integer_generator(gens, n, flavor);
      Integer h = gcd(raw, m);
      // Finite-precision ambiguity: a generator valuation reaching the
      // precision cannot be told apart from a higher one.
      Ring finer = Ring::truncated_completion(ring.base(), ring.completion_ideal(), ring.precision() + 1);
      bool stabilized = finer.face() == face;
      if (!stabilized) {
        for (const auto& [p, e] : factorize(m)) {
          if (raw != 0 && valuation(raw, p) < e) continue;
          throw Error(ErrorKind::UnsupportedQuotient,
                      "quotient of " + ring.display_name() + " exceeds its precision");
        }
      }
      Ring target = Ring::integers_mod(h);
      RingMap map{ring, target, [h](const Element& x) { return Element(Rational(rational_mod(x.value(), h))); },
                  [ring](const Element& x) { return ring.from_integer(numerator_of(x.value())); }};
      return Quotient{target, map};
    }
  }
  throw Error(ErrorKind::UnsupportedQuotient, "unsupported ring");
}

bool truncation_is_exact(const Ring& ring) {
  if (ring.kind() != RingKind::TruncatedCompletion) return true;
  if (ring.face().is_pid()) return true;
  Ring finer = Ring::truncated_completion(ring.base(), ring.completion_ideal(), ring.precision() + 1);
  return finer.face() == ring.face();
}

bool completion_is_torsion_free(const Ring& ring) {
  if (ring.kind() != RingKind::TruncatedCompletion) return false;
  const Ring& base = ring.base();
  switch (base.kind()) {
    case RingKind::Integers:
    case RingKind::LocalizedAtPrime:
    case RingKind::Rationals:
    case RingKind::PrimeField: return true;
    case RingKind::SquareZero:
      // The Pruefer part is divisible, so it dies in every R / I^n and the
      // completion is that of the base.
      return base.module().kind() == StructuredModule::Kind::Prufer;
    default: return false;
  }
}

RingMap completion_map(const IdealSpec& ideal, int precision) {
  Ring target = Ring::truncated_completion(ideal.ring, ideal.generators, precision);
  Quotient q = quotient_ring(ideal, static_cast<unsigned>(precision));
  return RingMap{ideal.ring, target, q.map.apply, q.map.lift};
}

// ---------------------------------------------------------------------------
// Parsing descriptors

namespace {

Integer json_integer(const json& v) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw Error(ErrorKind::Parse, "expected an integer, got " + v.dump());
}

}  // namespace

Ring parse_ring(const json& d) {
  require(d.is_object() && d.contains("kind"), ErrorKind::Parse, "ring descriptor needs a 'kind'");
  std::string kind = d.at("kind").get<std::string>();
  if (kind == "Z") return Ring::integers();
  if (kind == "Q") return Ring::rationals();
  if (kind == "Zmod") return Ring::integers_mod(json_integer(d.at("m")));
  if (kind == "Fp") return Ring::prime_field(json_integer(d.at("p")));
  if (kind == "ZLoc") return Ring::localized(json_integer(d.at("p")));
  if (kind == "TruncComp") {
    Ring base = parse_ring(d.at("base"));
    std::vector<Element> gens;
    for (const auto& g : d.at("ideal")) gens.push_back(base.parse(g));
    return Ring::truncated_completion(base, gens, d.at("precision").get<int>());
  }
  if (kind == "SquareZero") {
    Ring base = parse_ring(d.at("base"));
    const json& m = d.at("module");
    std::string mk = m.at("kind").get<std::string>();
    if (mk == "Prufer") return Ring::square_zero(base, StructuredModule::prufer(base, json_integer(m.at("p"))));
    if (mk == "FinitelyPresented") {
      Matrix rel;
      const json& rows = m.at("relations");
      std::size_t g = m.contains("generators") ? m.at("generators").get<std::size_t>() : rows.size();
      std::size_t cols = rows.empty() ? 0 : rows[0].size();
      rel = Matrix(g, cols);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) rel(i, j) = base.parse(rows[i][j]);
      return Ring::square_zero(base, StructuredModule::finitely_presented(base, rel));
    }
    throw Error(ErrorKind::Parse, "unknown module kind '" + mk + "'");
  }
  throw Error(ErrorKind::Parse, "unknown ring kind '" + kind + "'");
}

Ring ring_from_name(const std::string& name, const Integer& default_prime) {
  auto arg = [&](std::size_t pos) { return pos == std::string::npos ? default_prime : parse_integer(name.substr(pos + 1)); };
  if (!name.empty() && name[0] == '{') return parse_ring(json::parse(name));
  if (name == "Z") return Ring::integers();
  if (name == "Q") return Ring::rationals();
  if (name.rfind("Z/", 0) == 0) return Ring::integers_mod(parse_integer(name.substr(2)));
  auto colon = name.find(':');
  std::string head = name.substr(0, colon);
  if (head == "Zmod") return Ring::integers_mod(arg(colon));
  if (head == "Fp") return Ring::prime_field(arg(colon));
  if (head == "ZLoc" || head == "Z(p)") return Ring::localized(arg(colon));
  if (head == "exa-no") return Ring::exa_no(arg(colon));
  throw Error(ErrorKind::Parse, "unknown ring '" + name + "'");
}

// ---------------------------------------------------------------------------
// Matrices over a ring

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix identity_matrix(const Ring& ring, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix multiply(const Ring& ring, const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::InvalidArgument, "matrix dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!ring.is_zero(b(k, j))) c(i, j) = ring.add(c(i, j), ring.mul(a(i, k), b(k, j)));
    }
  return c;
}

Matrix add(const Ring& ring, const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::InvalidArgument, "matrix dimension mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ring.add(a(i, j), b(i, j));
  return c;
}

Matrix scale(const Ring& ring, const Element& c, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.mul(c, a(i, j));
  return out;
}

Matrix kronecker(const Ring& ring, const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ring.is_zero(a(i, j))) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = ring.mul(a(i, j), b(r, c));
    }
  return k;
}

Matrix map_entries(const Matrix& a, const std::function<Element(const Element&)>& f) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f(a(i, j));
  return out;
}

bool is_zero_matrix(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != Element()) return false;
  return true;
}

RMat to_rational(const Matrix& a) {
  RMat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).value();
  return r;
}

Matrix from_rational(const RMat& a) {
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Element(a(i, j));
  return m;
}

json matrix_to_json(const Ring& ring, const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(ring.render(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Ring& ring, const json& value) {
  require(value.is_array(), ErrorKind::Parse, "matrix must be an array of rows");
  std::size_t rows = value.size();
  std::size_t cols = rows == 0 ? 0 : value[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(value[i].is_array() && value[i].size() == cols, ErrorKind::Parse, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.parse(value[i][j]);
  }
  return m;
}

}  // namespace koszulkit
