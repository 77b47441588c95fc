#pragma once

#include "koszulkit/integer.hpp"
#include "koszulkit/mat.hpp"
#include "koszulkit/pid.hpp"
#include "koszulkit/snf.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace koszulkit {

using json = nlohmann::json;

/// An element of one of the supported rings. The scalar payload is an
/// integer, residue or reduced fraction; square-zero rings also carry a
/// module coordinate vector, which is empty exactly when it is zero.
class Element {
 public:
  Element() = default;
  Element(Rational value) : value_(std::move(value)) {}  // NOLINT: scalars convert implicitly
  Element(Rational value, std::vector<Rational> module_part)
      : value_(std::move(value)), module_(std::move(module_part)) {}

  const Rational& value() const noexcept { return value_; }
  const std::vector<Rational>& module_part() const noexcept { return module_; }

  bool operator==(const Element&) const = default;

 private:
  Rational value_;
  std::vector<Rational> module_;
};

using Matrix = Mat<Element>;

enum class RingKind {
  Integers,
  IntegersMod,
  Rationals,
  PrimeField,
  LocalizedAtPrime,
  TruncatedCompletion,
  SquareZero,
};

class Ring;
class StructuredModule;
struct RingData;

/// Immutable, cheaply copyable ring descriptor.
class Ring {
 public:
  Ring();  // Z

  static Ring integers();
  static Ring integers_mod(const Integer& m);
  static Ring rationals();
  static Ring prime_field(const Integer& p);
  static Ring localized(const Integer& p);
  static Ring truncated_completion(const Ring& base, std::vector<Element> ideal, int precision);
  static Ring square_zero(const Ring& base, std::shared_ptr<const StructuredModule> module);
  /// Z_(p) + Q/Z_(p) with the Pruefer part squaring to zero.
  static Ring exa_no(const Integer& p);

  RingKind kind() const;
  const Integer& modulus() const;  // IntegersMod
  const Integer& prime() const;    // PrimeField, LocalizedAtPrime, and derived kinds where meaningful
  const Ring& base() const;        // TruncatedCompletion, SquareZero
  const std::vector<Element>& completion_ideal() const;
  int precision() const;           // TruncatedCompletion
  const Ring& face() const;        // TruncatedCompletion: base / I^N
  const StructuredModule& module() const;  // SquareZero

  bool is_pid() const;
  /// PID arithmetic for PID-class rings. Throws UnsupportedRing otherwise.
  Pid pid() const;
  bool is_zero_ring() const;

  Element zero() const { return Element(); }
  Element one() const;
  Element from_integer(const Integer& n) const;
  Element canonical(const Element& x) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(const Element& a, unsigned n) const;
  bool is_zero(const Element& a) const { return a == Element(); }
  bool is_unit(const Element& a) const;
  Element inverse(const Element& a) const;

  /// Element from its string/array serialization ("p" names the ring's prime).
  Element parse(const json& value) const;
  json render(const Element& x) const;
  std::string render_text(const Element& x) const;

  json descriptor() const;
  const std::string& name() const;
  std::string display_name() const;

  bool operator==(const Ring& other) const;
  bool operator!=(const Ring& other) const { return !(*this == other); }

 private:
  explicit Ring(std::shared_ptr<const RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const RingData> data_;
};

/// A module structure for the square-zero part of a ring: the Pruefer module
/// Q/Z_(p) or a finitely presented module over the (PID) base.
class StructuredModule {
 public:
  enum class Kind { Prufer, FinitelyPresented };

  static std::shared_ptr<const StructuredModule> prufer(const Ring& base, const Integer& p);
  static std::shared_ptr<const StructuredModule> finitely_presented(const Ring& base, const Matrix& relations);

  Kind kind() const noexcept { return kind_; }
  const Integer& prime() const noexcept { return prime_; }
  const Matrix& relations() const noexcept { return relations_; }
  std::size_t generators() const noexcept { return generators_; }
  /// Invariant factors of the presentation (0 = free summand), one per generator.
  const std::vector<Rational>& summands() const noexcept { return summands_; }

  std::vector<Rational> canonical(const std::vector<Rational>& x) const;
  std::vector<Rational> add(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  std::vector<Rational> scale(const Rational& a, const std::vector<Rational>& x) const;
  /// Coordinates of x in the Smith basis, reduced.
  std::vector<Rational> smith_coordinates(const std::vector<Rational>& x) const;
  /// Module element given by Smith-basis coordinates.
  std::vector<Rational> from_smith_coordinates(const std::vector<Rational>& c) const;

  std::vector<Rational> parse(const json& value) const;
  json render(const std::vector<Rational>& x) const;
  json descriptor() const;

 private:
  StructuredModule() = default;
  Kind kind_ = Kind::Prufer;
  Pid pid_;
  Integer prime_ = 0;
  Matrix relations_;
  std::size_t generators_ = 0;
  std::vector<Rational> summands_;
  RMat u_, u_inv_;
};

/// A finitely generated ideal, recorded by its generator sequence.
struct IdealSpec {
  Ring ring;
  std::vector<Element> generators;

  IdealSpec(Ring ring, std::vector<Element> generators);
  std::size_t size() const { return generators.size(); }
  /// (s_1^n, ..., s_r^n)
  IdealSpec generator_powers(unsigned n) const;
  json to_json() const;
};

/// Ring homomorphism produced by this toolkit, with a set-theoretic section
/// for surjections.
struct RingMap {
  Ring source;
  Ring target;
  std::function<Element(const Element&)> apply;
  std::function<Element(const Element&)> lift;

  Element operator()(const Element& x) const { return apply(x); }
};

enum class QuotientFlavor { Powers, GeneratorPowers };

struct Quotient {
  Ring ring;
  RingMap map;
};

/// R / I^n (Powers) or R / I^(n) (GeneratorPowers).
Quotient quotient_ring(const IdealSpec& ideal, unsigned n, QuotientFlavor flavor = QuotientFlavor::Powers);

/// For a truncated completion: whether base / I^N already equals base / I^(N+1),
/// in which case the face is the completion itself and answers are exact.
bool truncation_is_exact(const Ring& ring);

/// For a truncated completion: whether the completion is torsion-free
/// (a product of p-adic domains), so that nonvanishing at precision says
/// something about every precision.
bool completion_is_torsion_free(const Ring& ring);

/// The canonical map R -> TruncatedCompletion(R, I, N).
RingMap completion_map(const IdealSpec& ideal, int precision);

/// Element of Z (or of the base PID) representing the "scalar part" of x.
Rational scalar_part(const Ring& ring, const Element& x);

Ring parse_ring(const json& descriptor);
/// Shorthand names: Z, Q, Zmod:<m>, Z/<m>, Fp:<p>, ZLoc:<p>, exa-no:<p>.
Ring ring_from_name(const std::string& name, const Integer& default_prime);

// Matrix helpers over a ring.
Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(const Ring& ring, std::size_t n);
Matrix multiply(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix add(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix scale(const Ring& ring, const Element& c, const Matrix& a);
Matrix kronecker(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix map_entries(const Matrix& a, const std::function<Element(const Element&)>& f);
bool is_zero_matrix(const Matrix& a);
RMat to_rational(const Matrix& a);
Matrix from_rational(const RMat& a);

json matrix_to_json(const Ring& ring, const Matrix& a);
Matrix matrix_from_json(const Ring& ring, const json& value);

}  // namespace koszulkit
