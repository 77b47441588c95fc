#include "koszulkit/completion.hpp"

#include "koszulkit/error.hpp"
#include "koszulkit/homology.hpp"

#include <algorithm>

namespace koszulkit {

// ---------------------------------------------------------------------------
// Ring towers

RingTower::RingTower(IdealSpec ideal, int length) : ideal_(std::move(ideal)) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "tower length must be positive");
  for (int n = 1; n <= length; ++n) stages_.push_back(quotient_ring(ideal_, static_cast<unsigned>(n)));
}

Element RingTower::reduce(const Element& x, int n, int m) const {
  if (m > n) throw Error(ErrorKind::InvalidArgument, "reduction goes down the tower");
  return stage(m).map(stage(n).map.lift(x));
}

Ring RingTower::truncated_completion() const {
  return Ring::truncated_completion(ideal_.ring, ideal_.generators, length());
}

RingTower classical_completion_tower(const IdealSpec& ideal, int n) { return RingTower(ideal, n); }

// ---------------------------------------------------------------------------
// Module descriptions

namespace {

bool is_local_domain_base(const Ring& ring) {
  return ring.kind() == RingKind::Integers || ring.kind() == RingKind::LocalizedAtPrime;
}

}  // namespace

ModuleSpec ModuleSpec::finitely_presented(const Ring& ring, const Matrix& relations) {
  CoefficientDomain cd = coefficient_domain(ring);
  ModuleSpec m;
  m.kind_ = Kind::FinitelyPresented;
  m.ring_ = ring;
  m.pid_ = cd.pid;
  m.prime_ = ring.prime();
  RMat rel = to_rational(relations);
  if (cd.modulus != 0) {
    RMat aug(rel.rows(), rel.cols() + rel.rows());
    aug.set_block(0, 0, rel);
    for (std::size_t i = 0; i < rel.rows(); ++i) aug(i, rel.cols() + i) = Rational(cd.modulus);
    rel = aug;
  }
  m.relations_ = rel;
  return m;
}

ModuleSpec ModuleSpec::free(const Ring& ring, std::size_t rank) { return finitely_presented(ring, Matrix(rank, 0)); }

ModuleSpec ModuleSpec::cyclic(const Ring& ring, const Element& order) {
  Matrix rel(1, 1);
  rel(0, 0) = ring.canonical(order);
  return finitely_presented(ring, rel);
}

ModuleSpec ModuleSpec::prufer(const Ring& ring, const Integer& p) {
  if (!is_local_domain_base(ring)) throw Error(ErrorKind::UnsupportedRing, "Q/Z_(p) is a module over Z or Z_(p)");
  if (ring.kind() == RingKind::LocalizedAtPrime && ring.prime() != p)
    throw Error(ErrorKind::UnsupportedRing, "prime mismatch for Q/Z_(p)");
  ModuleSpec m;
  m.kind_ = Kind::Prufer;
  m.ring_ = ring;
  m.pid_ = ring.pid();
  m.prime_ = p;
  return m;
}

ModuleSpec ModuleSpec::fraction_field(const Ring& ring) {
  if (!is_local_domain_base(ring)) throw Error(ErrorKind::UnsupportedRing, "Q is handled as a module over Z or Z_(p)");
  ModuleSpec m;
  m.kind_ = Kind::FractionField;
  m.ring_ = ring;
  m.pid_ = ring.pid();
  m.prime_ = ring.prime();
  return m;
}

ModuleSpec ModuleSpec::ring_itself(const Ring& ring) {
  bool linear = ring.kind() != RingKind::SquareZero &&
                (ring.kind() != RingKind::TruncatedCompletion || truncation_is_exact(ring));
  if (linear) return free(ring, 1);
  ModuleSpec m;
  m.kind_ = Kind::RingItself;
  m.ring_ = ring;
  m.prime_ = ring.prime();
  return m;
}

ModuleSpec ModuleSpec::parse(const std::string& text, const Ring& ring, const Integer& default_prime) {
  if (!text.empty() && text[0] == '{') {
    json d = json::parse(text);
    std::string kind = d.at("kind").get<std::string>();
    if (kind == "FinitelyPresented") return finitely_presented(ring, matrix_from_json(ring, d.at("relations")));
    if (kind == "Prufer") return prufer(ring, parse_integer(d.at("p").is_string() ? d.at("p").get<std::string>()
                                                                                    : std::to_string(d.at("p").get<long long>())));
    if (kind == "Q") return fraction_field(ring);
    if (kind == "Ring") return ring_itself(ring);
    throw Error(ErrorKind::Parse, "unknown module kind '" + kind + "'");
  }
  if (text == "R" || text == "Z" || text == ring.display_name()) return ring_itself(ring);
  if (text == "Q") return fraction_field(ring);
  if (text.rfind("Prufer", 0) == 0 || text.rfind("Q/Z", 0) == 0) {
    auto colon = text.find(':');
    return prufer(ring, colon == std::string::npos ? default_prime : parse_integer(text.substr(colon + 1)));
  }
  if (text.rfind("Z^", 0) == 0 || text.rfind("R^", 0) == 0)
    return free(ring, static_cast<std::size_t>(std::stoul(text.substr(2))));
  if (text.rfind("Z/", 0) == 0) {
    std::string order = text.substr(2);
    return cyclic(ring, ring.parse(json(order)));
  }
  throw Error(ErrorKind::Parse, "unknown module '" + text + "'");
}

ModuleInvariant ModuleSpec::invariant() const {
  if (kind_ != Kind::FinitelyPresented)
    throw Error(ErrorKind::UnsupportedRing, text() + " has no finitely generated invariant");
  ModuleInvariant inv = cokernel_invariant(relations_, pid_);
  inv.validity = coefficient_domain(ring_).validity;
  return inv;
}

std::string ModuleSpec::text() const {
  switch (kind_) {
    case Kind::FinitelyPresented: return invariant().text();
    case Kind::Prufer: return "Q/Z_(" + to_string(prime_) + ")";
    case Kind::FractionField: return "Q";
    case Kind::RingItself: return ring_.display_name();
  }
  return "?";
}

json ModuleSpec::to_json() const {
  switch (kind_) {
    case Kind::FinitelyPresented: return json{{"kind", "FinitelyPresented"}, {"invariant", invariant().to_json()}};
    case Kind::Prufer: return json{{"kind", "Prufer"}, {"p", to_string(prime_)}};
    case Kind::FractionField: return json{{"kind", "Q"}};
    case Kind::RingItself: return json{{"kind", "Ring"}, {"ring", ring_.descriptor()}};
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Classical completion of modules

json ModuleCompletion::to_json() const {
  json st = json::array();
  for (const auto& s : stages) st.push_back(s.to_json());
  json out{{"stages", st}, {"at_precision", at_precision().to_json()}, {"classically_complete", classically_complete}};
  out["stabilized_at"] = stabilized_at ? json(*stabilized_at) : json(nullptr);
  return out;
}

namespace {

// Generator of I^n inside the coefficient PID of a linear ring (0 for the zero ideal).
Rational power_generator(const IdealSpec& ideal, int n) {
  Quotient q = quotient_ring(ideal, static_cast<unsigned>(n));
  if (q.ring.kind() == RingKind::IntegersMod) return Rational(q.ring.modulus());
  return 0;
}

}  // namespace

ModuleCompletion complete_module(const ModuleSpec& m, const IdealSpec& ideal, int n) {
  if (m.ring() != ideal.ring) throw Error(ErrorKind::RingMismatch, "module and ideal live over different rings");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
  ModuleCompletion out;
  for (int k = 1; k <= n; ++k) {
    switch (m.kind()) {
      case ModuleSpec::Kind::FinitelyPresented: {
        Rational g = power_generator(ideal, k);
        const RMat& rel = m.relations();
        RMat aug(rel.rows(), rel.cols() + rel.rows());
        aug.set_block(0, 0, rel);
        for (std::size_t i = 0; i < rel.rows(); ++i) aug(i, rel.cols() + i) = g;
        out.stages.push_back(cokernel_invariant(aug, m.pid()));
        break;
      }
      case ModuleSpec::Kind::Prufer:
      case ModuleSpec::Kind::FractionField: {
        // Divisible by every nonzero element of the base, so M = I^k M.
        if (power_generator(ideal, k) == 0)
          throw Error(ErrorKind::UnsupportedRing, m.text() + " modulo the zero ideal is not finitely generated");
        out.stages.push_back(ModuleInvariant::zero(m.ring().pid()));
        break;
      }
      case ModuleSpec::Kind::RingItself: {
        Quotient q = quotient_ring(ideal, static_cast<unsigned>(k));
        Pid pid = m.ring().kind() == RingKind::SquareZero ? m.ring().base().pid() : Pid::integers();
        out.stages.push_back(ModuleInvariant::from_cyclic(pid, {Rational(q.ring.modulus())}));
        break;
      }
    }
  }
  for (int k = n - 1; k >= 1; --k) {
    if (out.stages[static_cast<std::size_t>(k - 1)] == out.stages.back()) out.stabilized_at = k;
    else break;
  }
  if (!out.stabilized_at) out.stages.back().validity = Validity::modulo(n);
  out.classically_complete = m.kind() == ModuleSpec::Kind::FinitelyPresented && out.stabilized_at.has_value() &&
                             out.stages.back() == m.invariant();
  return out;
}

// ---------------------------------------------------------------------------
// Idempotent lifting

namespace {

Matrix newton_step(const Ring& ring, const Matrix& f) {
  Matrix f2 = multiply(ring, f, f);
  Matrix f3 = multiply(ring, f2, f);
  return add(ring, scale(ring, ring.from_integer(3), f2), scale(ring, ring.from_integer(-2), f3));
}

}  // namespace

IdempotentLift idempotent_lift(const Matrix& e_in, const RingTower& tower, int n) {
  if (n < 1 || n > tower.length()) throw Error(ErrorKind::InvalidArgument, "precision outside the tower");
  const Quotient& first = tower.stage(1);
  if (e_in.rows() != e_in.cols()) throw Error(ErrorKind::InvalidArgument, "idempotents are square matrices");
  Matrix e = map_entries(e_in, [&](const Element& x) { return first.ring.canonical(x); });
  if (multiply(first.ring, e, e) != e) throw Error(ErrorKind::NotIdempotent, "E^2 != E modulo I");

  IdempotentLift out;
  Matrix lifted = map_entries(e, first.map.lift);  // over R
  for (int k = 1; k <= n; ++k) {
    const Quotient& q = tower.stage(k);
    Matrix f = map_entries(lifted, q.map.apply);
    // One step doubles the precision; iterate defensively until idempotent.
    for (int guard = 0; guard < 64 && multiply(q.ring, f, f) != f; ++guard) f = newton_step(q.ring, f);
    out.stages.push_back(f);
    lifted = map_entries(f, q.map.lift);
  }
  out.verified = true;
  for (int k = 1; k <= n; ++k) {
    const Quotient& q = tower.stage(k);
    const Matrix& f = out.stages[static_cast<std::size_t>(k - 1)];
    Matrix down = map_entries(f, [&](const Element& x) { return tower.reduce(x, k, 1); });
    if (multiply(q.ring, f, f) != f || down != e) out.verified = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived completion

namespace {

RMat reduce_rows(const Pid& pid, RMat m, const std::vector<Rational>& orders) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = pid.reduce(m(i, j), orders[i]);
  return m;
}

// Column span of s plus the relations of h contains every column of t.
bool contains(const HomologyGroup& h, const RMat& s, const RMat& t) {
  const auto& orders = h.orders();
  RMat a(orders.size(), s.cols() + orders.size());
  a.set_block(0, 0, s);
  for (std::size_t i = 0; i < orders.size(); ++i) a(i, s.cols() + i) = orders[i];
  for (std::size_t j = 0; j < t.cols(); ++j) {
    std::vector<Rational> col(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) col[i] = t(i, j);
    if (!solve(h.pid(), a, col)) return false;
  }
  return true;
}

bool same_submodule(const HomologyGroup& h, const RMat& a, const RMat& b) { return contains(h, a, b) && contains(h, b, a); }

ModuleInvariant submodule_invariant(const HomologyGroup& h, const RMat& s, const Validity& v) {
  const auto& orders = h.orders();
  RMat a(orders.size(), s.cols() + orders.size());
  a.set_block(0, 0, s);
  for (std::size_t i = 0; i < orders.size(); ++i) a(i, s.cols() + i) = orders[i];
  RMat k = kernel_basis(h.pid(), a);
  ModuleInvariant inv = cokernel_invariant(k.block(0, s.cols(), 0, k.cols()), h.pid());
  inv.validity = v;
  return inv;
}

}  // namespace

json DegreeReport::to_json(const std::string& generator) const {
  json lim_json;
  if (lim_kind == "stable") lim_json = json{{"kind", "stable"}, {"invariant", lim.to_json()}};
  else if (lim_kind == "pro-cyclic") lim_json = json{{"kind", "pro-cyclic"}, {"p", generator}, {"truncation", lim.to_json()}};
  else if (lim_kind == "pro") lim_json = json{{"kind", "pro"}, {"truncation", lim.to_json()}};
  else lim_json = json{{"kind", "inconclusive"}};
  json st = json::array();
  for (const auto& s : stages) st.push_back(s.to_json());
  json out{{"lim", lim_json}, {"lim1", lim1}, {"stages", st}};
  out["ml_at"] = ml_at ? json(*ml_at) : json(nullptr);
  if (holim) out["holim"] = holim->to_json();
  else if (holim_is_lim) out["holim"] = "lim";
  else out["holim"] = "inconclusive";
  return out;
}

const DegreeReport& CompletionReport::degree(int i) const {
  for (const auto& d : degrees)
    if (d.degree == i) return d;
  throw Error(ErrorKind::InvalidArgument, "degree " + std::to_string(i) + " is not in the report");
}

json CompletionReport::to_json() const {
  json degs = json::object();
  for (const auto& d : degrees) degs[std::to_string(d.degree)] = d.to_json(generator);
  return json{{"precision", precision}, {"tower", "k^(n) = Kos(s_1^n, ..., s_r^n)"}, {"degrees", degs}, {"verdict", verdict}};
}

CompletionReport derived_completion(const FreeComplex& t, const IdealSpec& ideal, int n) {
  if (t.ring() != ideal.ring) throw Error(ErrorKind::RingMismatch, "complex and ideal live over different rings");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
  const Ring& ring = ideal.ring;
  const Validity validity = Validity::modulo(n);
  KoszulTower tower(ideal);
  std::vector<FreeComplex> stages;
  std::vector<ChainMap> maps;  // maps[k] : stage k+1 -> stage k (1-based stages)
  ChainMap id = ChainMap::identity(t);
  for (int k = 1; k <= n; ++k) {
    stages.push_back(tensor(tower.stage(k), t));
    if (k >= 2) maps.push_back(tensor(tower.map_q(k), id));
  }

  CompletionReport report;
  report.precision = n;
  report.generator = ideal.size() == 1 ? ring.render_text(ideal.generators.front()) : "I";
  const int lo = t.lo(), hi = t.hi() + static_cast<int>(ideal.size());
  for (int i = lo; i <= hi; ++i) {
    DegreeReport dr;
    dr.degree = i;
    std::vector<HomologyGroup> h;
    for (int k = 1; k <= n; ++k) {
      h.push_back(homology_group(stages[static_cast<std::size_t>(k - 1)], i));
      dr.stages.push_back(h.back().invariant());
    }
    // step[k] : H(stage k+2) -> H(stage k+1), 0-based stages.
    std::vector<RMat> step;
    for (int k = 0; k + 1 < n; ++k)
      step.push_back(induced_map(maps[static_cast<std::size_t>(k)], h[static_cast<std::size_t>(k + 1)],
                                 h[static_cast<std::size_t>(k)]));
    // image(from -> to), 0-based stage indices.
    auto image = [&](int from, int to) {
      const HomologyGroup& target = h[static_cast<std::size_t>(from)];
      RMat m = identity_matrix(target.generator_count());
      for (int k = from - 1; k >= to; --k) {
        const HomologyGroup& hk = h[static_cast<std::size_t>(k)];
        m = reduce_rows(hk.pid(), multiply(hk.pid(), step[static_cast<std::size_t>(k)], m), hk.orders());
      }
      return m;
    };
    std::vector<RMat> eventual;  // im(N -> k) for k < N
    for (int k = 0; k + 1 < n; ++k) {
      eventual.push_back(image(n - 1, k));
      dr.stable_images.push_back(submodule_invariant(h[static_cast<std::size_t>(k)], eventual.back(), validity));
    }
    for (int lag = 0; lag + 2 <= n && !dr.ml_at; ++lag) {
      bool ok = true;
      for (int k = 0; k + lag < n - 1 && ok; ++k)
        ok = same_submodule(h[static_cast<std::size_t>(k)], image(k + lag, k), eventual[static_cast<std::size_t>(k)]);
      if (ok) dr.ml_at = lag + 1;
    }
    dr.lim1 = dr.ml_at ? "vanishes" : "inconclusive";
    if (!dr.ml_at) {
      dr.lim_kind = "inconclusive";
    } else if (n >= 3 && dr.stable_images[static_cast<std::size_t>(n - 2)] == dr.stable_images[static_cast<std::size_t>(n - 3)]) {
      dr.lim_kind = "stable";
      dr.lim = dr.stable_images.back();
    } else {
      bool cyclic = std::all_of(dr.stable_images.begin(), dr.stable_images.end(),
                                [](const ModuleInvariant& m) { return m.minimal_generators() <= 1; });
      dr.lim_kind = cyclic ? "pro-cyclic" : "pro";
      dr.lim = dr.stages.back();
      dr.lim.validity = validity;
    }
    report.degrees.push_back(dr);
  }
  // H_i(holim) = lim H_i once lim^1 H_{i+1} vanishes.
  bool determined = true;
  for (std::size_t k = 0; k < report.degrees.size(); ++k) {
    DegreeReport& dr = report.degrees[k];
    bool next_ok = k + 1 == report.degrees.size() || report.degrees[k + 1].lim1 == "vanishes";
    if (next_ok && dr.lim_kind == "stable") dr.holim = dr.lim;
    dr.holim_is_lim = next_ok && dr.lim_kind != "inconclusive";
    determined = determined && dr.holim_is_lim;
  }
  report.verdict = determined ? "determined" : "inconclusive";
  return report;
}

FreeComplex f_s_truncation(const Ring& ring, const Element& s, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "truncation length must be positive");
  const auto n = static_cast<std::size_t>(k);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = ring.one();
    if (i + 1 < n) m(i, i + 1) = ring.neg(s);
  }
  return FreeComplex(ring, 0, {n, n}, {m});
}

// ---------------------------------------------------------------------------
// Derived completeness and separatedness

int CheckResult::exit_code() const {
  if (verdict == "complete" || verdict == "separated") return 0;
  if (verdict == "inconclusive") return 3;
  return 1;
}

json CheckResult::to_json() const {
  json out{{"check", check}, {"verdict", verdict}, {"precision", precision}, {"reason", reason}};
  if (!witness.is_null()) out["witness"] = witness;
  return out;
}

namespace {

struct Summands {
  SmithForm snf;
  std::vector<Rational> orders;  // one per generator; 0 = free
};

Summands summands(const ModuleSpec& m) {
  Summands s;
  s.snf = smith_form(m.pid(), m.relations());
  for (std::size_t j = 0; j < m.relations().rows(); ++j)
    s.orders.push_back(j < s.snf.rank ? m.pid().normalize(s.snf.d(j, j)) : Rational(0));
  return s;
}

// Original coordinates of a times the j-th Smith generator.
json smith_element(const ModuleSpec& m, const Summands& s, std::size_t j, const Rational& a) {
  json out = json::array();
  for (std::size_t r = 0; r < s.snf.u_inv.rows(); ++r) out.push_back(to_string(m.pid().canonical(s.snf.u_inv(r, j) * a)));
  return out;
}

bool trivial(const Pid& pid, const Rational& order) { return order != 0 && pid.is_unit(order); }

CheckResult result(std::string check, std::string verdict, std::string reason, int n, json witness = nullptr) {
  return CheckResult{std::move(check), std::move(verdict), std::move(witness), std::move(reason), n};
}

// p-adic square root of c to precision p^prec; c must be 1 mod 8p.
Integer padic_sqrt(const Integer& c, const Integer& p, int prec) {
  Integer r = 1;
  if (p == 2) {
    for (int k = 3; k < prec; ++k) {
      Integer mk = power(Integer(2), static_cast<unsigned>(k + 1));
      if (mod(r * r - c, mk) != 0) r += power(Integer(2), static_cast<unsigned>(k - 1));
    }
    return mod(r, power(Integer(2), static_cast<unsigned>(prec)));
  }
  for (int k = 1; k < prec; ++k) {
    Integer pk = power(p, static_cast<unsigned>(k));
    Integer defect = mod((c - r * r) / pk, p);
    r += mod(defect * inverse_mod(mod(2 * r, p), p), p) * pk;
  }
  return r;
}

// Target sequence y in a free summand of a module over Z_(p) with no preimage under 1 - s*tau.
json no_preimage_over_localization(const Integer& p, const Rational& s, int terms, std::string* reason) {
  int v = valuation(s, p);
  Integer c = 0;
  for (Integer m = 1;; ++m) {
    c = 1 + power(p, 3) * m;
    Integer r = boost::multiprecision::sqrt(c);
    if (r * r != c) break;
  }
  int prec = v * terms + 8;
  Integer pv = power(p, static_cast<unsigned>(v));
  Rational unit = s / Rational(pv);
  Integer x = padic_sqrt(c, p, prec);
  json target = json::array();
  for (int l = 0; l < terms; ++l) {
    Integer digit = mod(x, pv);
    target.push_back(to_string(digit));
    prec -= v;
    Integer mod_p = power(p, static_cast<unsigned>(std::max(prec, 1)));
    x = mod(((x - digit) / pv) * rational_mod(Rational(1) / unit, mod_p), mod_p);
  }
  *reason = "a preimage (x_n) would have x_0 = sum_l s^l y_l = sqrt(" + to_string(c) + ") in the " + to_string(p) +
            "-adic completion; that square root is irrational, so x_0 is not in Z_(" + to_string(p) + ")";
  return target;
}

}  // namespace

CheckResult derived_complete_check(const ModuleSpec& m, const Element& s_in, int n) {
  const std::string check = "derived-complete";
  const Ring& ring = m.ring();
  const Element s = ring.canonical(s_in);
  const int terms = std::max(n, 1);
  switch (m.kind()) {
    case ModuleSpec::Kind::FinitelyPresented: {
      const Pid& pid = m.pid();
      const Rational sv = pid.canonical(s.value());
      Summands sm = summands(m);
      std::optional<std::size_t> first_nonzero;
      for (std::size_t j = 0; j < sm.orders.size(); ++j)
        if (!trivial(pid, sm.orders[j]) && !first_nonzero) first_nonzero = j;
      if (!first_nonzero) return result(check, "complete", "M = 0", n);
      if (coefficient_domain(ring).modulus != 0) {
        // A Z/m-module: s acts through its residue; a zero residue means s = 0.
        if (sv == 0) return result(check, "complete", "s acts as zero on M", n);
      } else if (sv == 0) {
        return result(check, "complete", "s = 0: every module is complete", n);
      }
      auto kernel_witness = [&](std::size_t j, const Rational& x, const Integer& mod_order, std::string why) {
        json seq = json::array();
        for (int k = 0; k < terms; ++k) {
          Rational a = mod_order == 0 ? pid.canonical(x / power(sv, static_cast<unsigned>(k)))
                                      : Rational(mod(numerator_of(x) *
                                                         inverse_mod(mod(numerator_of(power(sv, static_cast<unsigned>(k))), mod_order), mod_order),
                                                     numerator_of(sm.orders[j])));
          seq.push_back(smith_element(m, sm, j, a));
        }
        json w{{"kind", "kernel"}, {"sequence", seq}, {"relation", "x_n = s x_{n+1}"}};
        return result(check, "not_complete", std::move(why), n, w);
      };
      if (pid.is_unit(sv) && pid.kind() != PidKind::Integers) {
        std::size_t j = *first_nonzero;
        return kernel_witness(j, 1, 0, "s is a unit and M != 0: (x, s^-1 x, s^-2 x, ...) lies in the kernel of 1 - s*tau");
      }
      // Torsion prime to s: s is invertible on that primary component.
      for (std::size_t j = 0; j < sm.orders.size(); ++j) {
        const Rational& d = sm.orders[j];
        if (d == 0 || trivial(pid, d) || pid.kind() != PidKind::Integers) continue;
        for (const auto& [q, e] : factorize(numerator_of(d))) {
          if (numerator_of(sv) % q == 0) continue;
          Integer qe = power(q, static_cast<unsigned>(e));
          return kernel_witness(j, Rational(numerator_of(d) / qe), qe,
                                "s is invertible on the " + to_string(q) + "-primary part Z/" + to_string(qe) +
                                    ", so (x, s^-1 x, ...) lies in the kernel of 1 - s*tau");
        }
      }
      for (std::size_t j = 0; j < sm.orders.size(); ++j) {
        if (sm.orders[j] != 0) continue;
        if (pid.kind() == PidKind::Integers) {
          if (sv == 1 || sv == -1) break;
          json target = json::array();
          for (int k = 0; k < terms; ++k) target.push_back(smith_element(m, sm, j, Rational(k % 2 == 0 ? 1 : 0)));
          json w{{"kind", "no_preimage"}, {"target", target}, {"pattern", "y_n = 1 for even n, 0 for odd n"}};
          return result(check, "not_complete",
                        "a preimage (x_n) of y under 1 - s*tau satisfies (1 - s^2) x_0 = 1 modulo every power of s, "
                        "hence exactly; 1 - s^2 = " + to_string(1 - numerator_of(sv) * numerator_of(sv)) +
                            " is not a unit of Z",
                        n, w);
        }
        if (pid.kind() == PidKind::LocalizedAtPrime) {
          std::string why;
          json digits = no_preimage_over_localization(pid.prime(), sv, terms, &why);
          json target = json::array();
          for (const auto& dgt : digits) target.push_back(smith_element(m, sm, j, parse_rational(dgt.get<std::string>())));
          return result(check, "not_complete", why, n, json{{"kind", "no_preimage"}, {"target", target}});
        }
      }
      if (pid.is_unit(sv)) {
        // Over Z with s = +-1 the whole module is a unit-multiple of itself.
        return kernel_witness(*first_nonzero, 1, 0, "s is a unit and M != 0");
      }
      return result(check, "complete",
                    "M is finitely generated s-power torsion, hence classically complete and so derived complete", n);
    }
    case ModuleSpec::Kind::Prufer: {
      const Rational sv = s.value();
      const Integer& p = m.prime();
      if (sv == 0) return result(check, "complete", "s = 0", n);
      if (valuation(sv, p) == 0) {
        json seq = json::array();
        for (int k = 0; k < terms; ++k) {
          Integer a = mod(inverse_mod(mod(rational_mod(power(sv, static_cast<unsigned>(k)), p), p), p), p);
          seq.push_back(to_string(a) + "/" + to_string(p) + "^1");
        }
        return result(check, "not_complete", "s acts invertibly on Q/Z_(p): (x, s^-1 x, ...) lies in the kernel", n,
                      json{{"kind", "kernel"}, {"sequence", seq}});
      }
      return result(check, "inconclusive",
                    "Q/Z_(p) is p-divisible and not separated; separatedness failure does not settle derived "
                    "completeness, and no certificate is available for this module",
                    n);
    }
    case ModuleSpec::Kind::FractionField: {
      const Rational sv = s.value();
      if (sv == 0) return result(check, "complete", "s = 0", n);
      json seq = json::array();
      for (int k = 0; k < terms; ++k) seq.push_back(to_string(Rational(1) / power(sv, static_cast<unsigned>(k))));
      return result(check, "not_complete", "s is invertible on Q: (1, 1/s, 1/s^2, ...) lies in the kernel", n,
                    json{{"kind", "kernel"}, {"sequence", seq}});
    }
    case ModuleSpec::Kind::RingItself: {
      if (ring.kind() == RingKind::TruncatedCompletion && completion_is_torsion_free(ring)) {
        Integer x = numerator_of(s.value());
        const Integer& modulus = ring.face().modulus();
        if (ring.is_unit(s)) {
          json seq = json::array();
          for (int k = 0; k < terms; ++k) seq.push_back(ring.render(ring.inverse(ring.pow(s, static_cast<unsigned>(k)))));
          return result(check, "not_complete", "s is a unit of the completion", n, json{{"kind", "kernel"}, {"sequence", seq}});
        }
        bool radical = true;
        for (const auto& [p, e] : factorize(modulus)) radical = radical && x % p == 0;
        if (radical)
          return result(check, "complete",
                        "the completion is I-adically complete and s lies in the radical of the extended ideal "
                        "(valid modulo I^" + std::to_string(ring.precision()) + ")",
                        n);
      }
      return result(check, "inconclusive", "no derived-completeness certificate for " + ring.display_name() + " over itself", n);
    }
  }
  return result(check, "inconclusive", "unsupported module", n);
}

CheckResult separatedness_check(const ModuleSpec& m, const IdealSpec& ideal, int n) {
  const std::string check = "separated";
  const Ring& ring = m.ring();
  if (ring != ideal.ring) throw Error(ErrorKind::RingMismatch, "module and ideal live over different rings");
  switch (m.kind()) {
    case ModuleSpec::Kind::FinitelyPresented: {
      const Pid& pid = m.pid();
      Rational g = 0;
      for (const auto& s : ideal.generators) g = pid.gcd(g, s.value());
      Summands sm = summands(m);
      if (g == 0) return result(check, "separated", "I = 0", n);
      for (std::size_t j = 0; j < sm.orders.size(); ++j) {
        const Rational& d = sm.orders[j];
        if (trivial(pid, d)) continue;
        if (pid.is_unit(g))
          return result(check, "not_separated", "I is the unit ideal and M != 0", n,
                        json{{"element", smith_element(m, sm, j, 1)}});
        if (d == 0 || pid.kind() != PidKind::Integers) continue;
        Integer dd = numerator_of(d), gg = numerator_of(g);
        Integer stable = gcd(power(gg, static_cast<unsigned>(msb(dd) + 1)), dd);
        if (stable != dd)
          return result(check, "not_separated",
                        "the part of Z/" + to_string(dd) + " prime to I is I-divisible, so it lies in every I^n M", n,
                        json{{"element", smith_element(m, sm, j, Rational(stable))}});
      }
      return result(check, "separated", "the intersection of I^n M vanishes (checked exactly)", n);
    }
    case ModuleSpec::Kind::Prufer:
    case ModuleSpec::Kind::FractionField: {
      bool nonzero = std::any_of(ideal.generators.begin(), ideal.generators.end(),
                                 [](const Element& s) { return s.value() != 0; });
      if (!nonzero) return result(check, "separated", "I = 0", n);
      json w = m.kind() == ModuleSpec::Kind::Prufer ? json("1/" + to_string(m.prime()) + "^1") : json("1");
      return result(check, "not_separated", m.text() + " is divisible by every nonzero element of I", n,
                    json{{"element", w}});
    }
    case ModuleSpec::Kind::RingItself: {
      if (ring.kind() == RingKind::SquareZero) {
        const StructuredModule& mod = ring.module();
        Rational g0 = 0;
        Pid pid = ring.base().pid();
        for (const auto& s : ideal.generators) g0 = pid.gcd(g0, s.value());
        if (g0 == 0) return result(check, "separated", "I lies in the square-zero part, so I^2 = 0", n);
        if (pid.is_unit(g0))
          return result(check, "not_separated", "I is the unit ideal", n, json{{"element", ring.render(ring.one())}});
        // s0^n R contains 0 + s0^n M, and the Pruefer part is s0-divisible.
        if (mod.kind() == StructuredModule::Kind::Prufer) {
          Element w(Rational(0), {Rational(1) / Rational(mod.prime())});
          return result(check, "not_separated",
                        "the square-zero part Q/Z_(p) is divisible, so 0 + Q/Z_(p) lies in every I^n", n,
                        json{{"element", ring.render(w)}});
        }
        return result(check, "inconclusive", "no separatedness procedure for this square-zero ring", n);
      }
      if (ring.kind() == RingKind::TruncatedCompletion && completion_is_torsion_free(ring))
        return result(check, "separated",
                      "a completion is separated for its ideal (valid modulo I^" + std::to_string(ring.precision()) + ")", n);
      return result(check, "inconclusive", "no separatedness procedure for " + ring.display_name(), n);
    }
  }
  return result(check, "inconclusive", "unsupported module", n);
}

}  // namespace koszulkit
