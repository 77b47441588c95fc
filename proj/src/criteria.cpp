#include "koszulkit/criteria.hpp"

#include "koszulkit/error.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/koszul.hpp"

#include <algorithm>
#include <set>

namespace koszulkit {

namespace {

ModuleInvariant at(const std::map<int, ModuleInvariant>& h, int i, const Pid& pid) {
  auto it = h.find(i);
  return it == h.end() ? ModuleInvariant::zero(pid) : it->second;
}

std::map<int, ModuleInvariant> koszul_homology_over_r(const IdealSpec& ideal) {
  const Ring& ring = ideal.ring;
  if (ring.kind() == RingKind::SquareZero) {
    if (ideal.size() != 1)
      throw Error(ErrorKind::UnsupportedRing, "Koszul homology over a square-zero ring is computed for one generator");
    auto [h0, h1] = koszul_principal_homology(ideal);
    return {{0, h0}, {1, h1}};
  }
  if (ring.kind() == RingKind::TruncatedCompletion)
    throw Error(ErrorKind::UnsupportedRing, "the ring is already a truncated completion");
  return homology(koszul(ideal));
}

std::map<int, ModuleInvariant> koszul_homology_over_completion(const IdealSpec& ideal, int n, bool* exact) {
  RingMap phi = completion_map(ideal, n);
  *exact = truncation_is_exact(phi.target);
  return completed_homology(base_change(koszul(ideal), phi));
}

}  // namespace

// ---------------------------------------------------------------------------
// Koszul-completeness

int KoszulCompletenessVerdict::exit_code() const {
  if (verdict == "complete") return 0;
  if (verdict == "not_complete") return 1;
  return 3;
}

json KoszulCompletenessVerdict::to_json() const {
  json s = json::array();
  for (const auto& g : ideal.generators) s.push_back(ideal.ring.render(g));
  json per = json::array();
  for (const auto& d : per_degree)
    per.push_back(json{{"degree", d.degree}, {"lhs", d.lhs.to_json()}, {"rhs", d.rhs.to_json()}, {"agree", d.agree},
                       {"stable", d.stable}});
  json out{{"check", "koszul-complete"}, {"ring", ideal.ring.descriptor()}, {"s", s}, {"precision", precision},
           {"verdict", verdict},       {"per_degree", per},                 {"reason", reason}};
  if (witness_degree) {
    const DegreeComparison& d = per_degree.at(static_cast<std::size_t>(*witness_degree));
    out["witness"] = json{{"degree", d.degree},
                          {"lhs", d.lhs.to_json()},
                          {"rhs", rhs_vanishes_always ? json("0 (all precisions)") : d.rhs.to_json()}};
  }
  return out;
}

KoszulCompletenessVerdict koszul_complete_check(const IdealSpec& ideal, int precision) {
  if (precision < 2) throw Error(ErrorKind::InvalidArgument, "precision must be at least 2");
  KoszulCompletenessVerdict v{ideal, precision, "inconclusive", {}, std::nullopt, false, ""};
  const int r = static_cast<int>(ideal.size());
  std::map<int, ModuleInvariant> lhs = koszul_homology_over_r(ideal);
  std::map<int, ModuleInvariant> rhs, rhs_prev;
  bool exact = false, exact_prev = false;
  try {
    rhs = koszul_homology_over_completion(ideal, precision, &exact);
    rhs_prev = koszul_homology_over_completion(ideal, precision - 1, &exact_prev);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    v.reason = e.what();
    return v;
  }
  Pid lpid = lhs.begin()->second.pid;
  Pid rpid = rhs.empty() ? lpid : rhs.begin()->second.pid;
  bool all_agree = true, all_stable = true;
  for (int i = 0; i <= r; ++i) {
    DegreeComparison d;
    d.degree = i;
    d.lhs = at(lhs, i, lpid);
    d.rhs = at(rhs, i, rpid);
    d.agree = same_primary_structure(d.lhs, d.rhs);
    d.stable = exact || same_primary_structure(d.rhs, at(rhs_prev, i, rpid));
    all_agree = all_agree && d.agree;
    all_stable = all_stable && d.stable;
    if (!d.agree && !v.witness_degree) v.witness_degree = i;
    v.per_degree.push_back(d);
  }
  if (all_agree) {
    v.witness_degree.reset();
    if (exact || all_stable) {
      v.verdict = "complete";
      v.reason = exact ? "every degree agrees; the completion is reached at finite precision"
                       : "every degree agrees and the completed side is stable from precision " +
                             std::to_string(precision - 1) + " to " + std::to_string(precision);
    } else {
      v.reason = "degrees agree but the completed side is still moving with the precision";
    }
    return v;
  }
  if (exact) {
    v.verdict = "not_complete";
    v.reason = "both sides are exact and differ in degree " + std::to_string(*v.witness_degree);
    return v;
  }
  // H_r(Kos(s) (x) R^) = Ann(I R^), which is zero at every precision when the
  // completion is torsion-free and some s_i is nonzero in it.
  const ModuleInvariant& top = v.per_degree.back().rhs;
  bool some_nonzero = std::any_of(ideal.generators.begin(), ideal.generators.end(),
                                  [&](const Element& s) { return scalar_part(ideal.ring, s) != 0; });
  RingMap phi = completion_map(ideal, precision);
  if (completion_is_torsion_free(phi.target) && some_nonzero && top.is_zero() && !v.per_degree.back().agree) {
    v.witness_degree = r;
    v.rhs_vanishes_always = true;
    v.verdict = "not_complete";
    v.reason = "H_" + std::to_string(r) + " over R is " + v.per_degree.back().lhs.text() +
               " while over the completion it is the annihilator of I in a torsion-free ring, hence 0";
    return v;
  }
  v.reason = "degree " + std::to_string(*v.witness_degree) + " differs at this precision but no class argument applies";
  v.witness_degree.reset();
  return v;
}

// ---------------------------------------------------------------------------
// Hom comparison

int HomComparison::exit_code() const {
  if (verdict == "isomorphic") return 0;
  if (verdict == "differs") return 1;
  return 3;
}

json HomComparison::to_json() const {
  auto graded = [](const std::map<int, ModuleInvariant>& h) {
    json out = json::object();
    for (const auto& [i, inv] : h)
      if (!inv.is_zero()) out[std::to_string(i)] = inv.to_json();
    return out;
  };
  return json{{"check", "compare-hom"}, {"verdict", verdict},   {"lhs", graded(lhs)},
              {"rhs", graded(rhs)},     {"annihilation_exponent", annihilation_exponent},
              {"precision", precision}, {"reason", reason}};
}

bool supported_on(const FreeComplex& t, const IdealSpec& ideal) {
  for (const auto& [i, inv] : homology(t))
    for (const auto& s : ideal.generators)
      if (inv.annihilation_exponent(s.value()) < 0) return false;
  return true;
}

HomComparison hom_set_comparison(const FreeComplex& a, const FreeComplex& b, const IdealSpec& ideal,
                                 int initial_precision) {
  if (a.ring() != ideal.ring || b.ring() != ideal.ring)
    throw Error(ErrorKind::RingMismatch, "complexes and ideal live over different rings");
  if (initial_precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
  HomComparison out;
  out.verdict = "inconclusive";
  out.precision = initial_precision;
  try {
    if (!supported_on(a, ideal) || !supported_on(b, ideal))
      throw Error(ErrorKind::SupportNotVerified, "homology is not killed by a power of every generator");
    out.lhs = graded_hom(a, b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedRing) throw;
    out.reason = std::string("no Hom computation over this ring: ") + e.what();
    return out;
  }
  int e = 0;
  for (const auto& [i, inv] : out.lhs)
    for (const auto& s : ideal.generators) e = std::max(e, inv.annihilation_exponent(s.value()));
  const int r = static_cast<int>(ideal.size());
  // (s_1^e, ..., s_r^e) contains I^(r(e-1)+1).
  out.annihilation_exponent = e == 0 ? 0 : r * (e - 1) + 1;

  auto completed = [&](int n, bool* exact) {
    RingMap phi = completion_map(ideal, n);
    *exact = truncation_is_exact(phi.target);
    return completed_homology(tensor(dual(base_change(a, phi)), base_change(b, phi)));
  };
  auto same = [](const std::map<int, ModuleInvariant>& x, const std::map<int, ModuleInvariant>& y) {
    std::set<int> degrees;
    for (const auto& kv : x) degrees.insert(kv.first);
    for (const auto& kv : y) degrees.insert(kv.first);
    for (int i : degrees) {
      auto ix = x.find(i), iy = y.find(i);
      bool zx = ix == x.end() || ix->second.is_zero(), zy = iy == y.end() || iy->second.is_zero();
      if (zx || zy) {
        if (zx != zy) return false;
        continue;
      }
      if (!same_primary_structure(ix->second, iy->second)) return false;
    }
    return true;
  };

  const int cap = initial_precision + 16;
  int n = std::max(initial_precision, out.annihilation_exponent + 1);
  try {
    for (; n <= cap; ++n) {
      bool exact = false, exact_next = false;
      auto rhs = completed(n, &exact);
      if (!exact && !same(rhs, completed(n + 1, &exact_next))) continue;
      out.rhs = rhs;
      out.precision = n;
      out.verdict = same(out.lhs, out.rhs) ? "isomorphic" : "differs";
      out.reason = exact ? "the completion is reached at finite precision"
                         : "the completed side is stable from precision " + std::to_string(n) + " to " +
                               std::to_string(n + 1);
      return out;
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Inconclusive) throw;
    out.reason = err.what();
    return out;
  }
  out.precision = cap;
  out.reason = "the completed side did not stabilize up to precision " + std::to_string(cap);
  return out;
}

// ---------------------------------------------------------------------------
// Amplitude descent

std::optional<std::pair<int, int>> homology_span(const FreeComplex& t) {
  std::optional<std::pair<int, int>> span;
  for (const auto& [i, inv] : homology(t)) {
    if (inv.is_zero()) continue;
    if (!span) span = std::pair{i, i};
    span->second = i;
  }
  return span;
}

int mod_amplitude(const FreeComplex& t, const IdealSpec& ideal) {
  Quotient q = quotient_ring(ideal, 1);
  auto span = homology_span(base_change(t, q.map));
  return span ? span->second - span->first : -1;
}

json DescentStep::to_json() const {
  const Ring& ring = next.ring();
  return json{{"bottom", bottom},
              {"rank", rank},
              {"idempotent", matrix_to_json(ring, idempotent)},
              {"g", g.to_json()},
              {"next", next.to_json()},
              {"amplitude_before", amplitude_before},
              {"amplitude_after", amplitude_after}};
}

namespace {

FreeComplex trim(const FreeComplex& t) {
  int lo = t.lo(), hi = t.hi();
  while (lo < hi && t.rank(lo) == 0) ++lo;
  while (hi > lo && t.rank(hi) == 0) --hi;
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(t.rank(i));
    diffs.push_back(i == lo ? Matrix(0, t.rank(i)) : t.d(i));
  }
  return FreeComplex(t.ring(), lo, ranks, diffs);
}

// k x n left inverse of an n x k matrix of full column rank over a field.
RMat left_inverse(const Pid& field, const RMat& g) {
  SmithForm s = smith_form(field, g);
  RMat dplus(g.cols(), g.rows());
  for (std::size_t j = 0; j < s.rank; ++j) dplus(j, j) = field.inverse(s.d(j, j));
  return multiply(field, multiply(field, s.v, dplus), s.u);
}

}  // namespace

DescentStep amplitude_descent_step(const FreeComplex& d, const IdealSpec& ideal) {
  const Ring& ring = d.ring();
  if (ring != ideal.ring) throw Error(ErrorKind::RingMismatch, "complex and ideal live over different rings");
  Quotient q1 = quotient_ring(ideal, 1);
  const Integer& m = ring.kind() == RingKind::IntegersMod ? ring.modulus() : Integer(0);
  auto primes = m > 1 ? factorize(m) : std::vector<std::pair<Integer, int>>{};
  if (primes.size() != 1 || q1.ring.kind() != RingKind::IntegersMod || q1.ring.modulus() != primes.front().first)
    throw Error(ErrorKind::UnsupportedRing, "descent runs over Z/p^k with I = (p)");
  const Integer p = primes.front().first;
  const int k = primes.front().second;
  const Pid field = Pid::prime_field(p);

  FreeComplex reduced = base_change(d, q1.map);
  auto span = homology_span(reduced);
  if (!span) throw Error(ErrorKind::ZeroInput, "d is acyclic modulo I, so d = 0");

  DescentStep step;
  step.bottom = span->first;
  step.amplitude_before = span->second - span->first;
  // The lowest homology of d sits in the same degree (nilpotent Nakayama),
  // and its minimal generators reduce to a basis of the mod-I homology.
  HomologyGroup h = homology_group(d, step.bottom);
  step.rank = h.generator_count();
  if (step.rank != homology_group(reduced, step.bottom).generator_count())
    throw Error(ErrorKind::InvalidArgument, "lowest homology does not reduce to the mod-I homology");
  const std::size_t n = d.rank(step.bottom);
  Matrix cycles(n, step.rank);
  RMat reduced_cycles(n, step.rank);
  for (std::size_t j = 0; j < step.rank; ++j) {
    auto z = h.generator(j);
    for (std::size_t i = 0; i < n; ++i) {
      cycles(i, j) = ring.canonical(Element(z[i]));
      reduced_cycles(i, j) = field.canonical(z[i]);
    }
  }
  // Projection of R/I^n onto the span of the cycles, lifted to an idempotent over R.
  RMat e = multiply(field, reduced_cycles, left_inverse(field, reduced_cycles));
  RingTower tower(ideal, k);
  Matrix e_matrix = map_entries(from_rational(e), [&](const Element& x) { return q1.ring.canonical(x); });
  IdempotentLift lift = idempotent_lift(e_matrix, tower, k);
  if (!lift.verified) throw Error(ErrorKind::NotIdempotent, "idempotent lift failed to verify");
  step.idempotent = map_entries(lift.result(), [&](const Element& x) { return ring.canonical(tower.stage(k).map.lift(x)); });

  FreeComplex cover(ring, step.bottom, {step.rank}, {});
  step.g = ChainMap(cover, d, {cycles}, step.bottom);
  step.next = trim(shift(cone(step.g).complex, -1));
  step.amplitude_after = mod_amplitude(step.next, ideal);
  return step;
}

// ---------------------------------------------------------------------------
// Gallery

json GalleryEntry::to_json() const {
  return json{{"name", name},     {"description", description}, {"expected", expected},
              {"actual", actual}, {"pass", passed()},           {"details", details}};
}

std::vector<std::string> gallery_names() {
  return {"exa-no", "noetherian-Z", "noetherian-Zloc", "regular-flat", "finite-ring", "trivial-Der"};
}

GalleryEntry gallery(const std::string& name, const Integer& p) {
  GalleryEntry g;
  g.name = name;
  auto koszul_entry = [&](const Ring& ring, std::vector<Element> gens, std::string description, std::string expected) {
    IdealSpec ideal(ring, std::move(gens));
    KoszulCompletenessVerdict v = koszul_complete_check(ideal, 8);
    g.description = std::move(description);
    g.expected = std::move(expected);
    g.actual = v.verdict;
    g.details = v.to_json();
  };
  if (name == "exa-no") {
    Ring r = Ring::exa_no(p);
    koszul_entry(r, {r.from_integer(p)}, "Z_(p) + Q/Z_(p) with s = (p): H_1 of the Koszul complex is not preserved",
                 "not_complete");
  } else if (name == "noetherian-Z") {
    Ring r = Ring::integers();
    koszul_entry(r, {r.from_integer(p)}, "Z with s = (p): noetherian rings have Koszul-complete sequences", "complete");
  } else if (name == "noetherian-Zloc") {
    Ring r = Ring::localized(p);
    koszul_entry(r, {r.from_integer(p)}, "Z_(p) with s = (p)", "complete");
  } else if (name == "regular-flat") {
    Ring r = Ring::integers();
    koszul_entry(r, {r.from_integer(2), r.from_integer(3)},
                 "Z with the regular sequence (2, 3): both Koszul complexes are contractible", "complete");
    g.details["quasi_isomorphism"] = is_acyclic(koszul(IdealSpec(r, {r.from_integer(2), r.from_integer(3)})));
  } else if (name == "finite-ring") {
    Ring r = Ring::integers_mod(12);
    koszul_entry(r, {r.from_integer(2), r.from_integer(3)}, "Z/12 with s = (2, 3): the completion is a quotient",
                 "complete");
  } else if (name == "trivial-Der") {
    Ring z = Ring::integers(), q = Ring::rationals();
    CompletionReport zr = derived_completion(FreeComplex::unit(z), IdealSpec(z, {z.from_integer(p)}), 6);
    CompletionReport qr = derived_completion(FreeComplex::unit(q), IdealSpec(q, {q.from_integer(p)}), 6);
    const DegreeReport& z0 = zr.degree(0);
    const DegreeReport& q0 = qr.degree(0);
    g.description = "derived completion of the unit differs from the unit: pro-cyclic Z_p over Z, zero over Q";
    g.expected = "not_unit";
    bool z_not_unit = z0.lim_kind == "pro-cyclic";
    bool q_zero = q0.lim_kind == "stable" && q0.lim.is_zero();
    g.actual = z_not_unit && q_zero ? "not_unit" : "unit";
    g.details = json{{"Z", zr.to_json()}, {"Q", qr.to_json()}};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown gallery preset '" + name + "'");
  }
  return g;
}

std::vector<GalleryEntry> counterexample_gallery() {
  std::vector<GalleryEntry> out;
  for (const auto& name : gallery_names()) out.push_back(gallery(name, name == "noetherian-Z" ? Integer(3) : Integer(5)));
  return out;
}

}  // namespace koszulkit
