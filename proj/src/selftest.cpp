#include "koszulkit/selftest.hpp"

#include "koszulkit/completion.hpp"
#include "koszulkit/criteria.hpp"
#include "koszulkit/error.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/lemmas.hpp"
#include "koszulkit/random.hpp"

#include <chrono>
#include <sstream>

namespace koszulkit::selftest {

namespace {

using Check = std::pair<bool, std::string>;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string torsion_text(const std::vector<Rational>& t) {
  std::vector<std::string> parts;
  for (const auto& x : t) parts.push_back(to_string(x));
  return "(" + join(parts, ", ") + ")";
}

// 1. Koszul-completeness fails for Z_(5) + Q/Z_(5) with s = (5).
Check counterexample(std::uint64_t) {
  Ring r = Ring::exa_no(5);
  KoszulCompletenessVerdict v = koszul_complete_check(IdealSpec(r, {r.from_integer(5)}), 8);
  bool ok = v.verdict == "not_complete" && v.witness_degree == 1 && v.rhs_vanishes_always;
  std::string lhs = "?";
  if (v.witness_degree) {
    const DegreeComparison& d = v.per_degree.at(static_cast<std::size_t>(*v.witness_degree));
    ok = ok && d.lhs.free_rank == 0 && d.lhs.torsion == std::vector<Rational>{Rational(5)} && d.rhs.is_zero();
    lhs = d.lhs.text();
  }
  return {ok, "verdict " + v.verdict + ", witness degree " +
                  (v.witness_degree ? std::to_string(*v.witness_degree) : std::string("none")) + ": " + lhs + " vs 0"};
}

// 2. Random sequences over noetherian rings are Koszul-complete.
Check noetherian(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Ring> rings{Ring::integers(), Ring::integers_mod(12), Ring::localized(5)};
  int total = 0;
  std::vector<std::string> misses;
  for (const Ring& ring : rings) {
    for (int c = 0; c < 20; ++c) {
      int r = static_cast<int>(uniform(rng, 1, 3));
      std::vector<Element> gens;
      for (int i = 0; i < r; ++i) {
        Rational x(uniform(rng, -12, 12));
        if (ring.kind() == RingKind::LocalizedAtPrime) x /= Rational(uniform(rng, 1, 3));
        gens.push_back(ring.canonical(Element(x)));
      }
      IdealSpec ideal(ring, gens);
      ++total;
      std::string verdict = koszul_complete_check(ideal, 8).verdict;
      if (verdict != "complete") misses.push_back(ring.display_name() + " " + ideal.to_json().dump() + " -> " + verdict);
    }
  }
  std::string detail = std::to_string(total - static_cast<int>(misses.size())) + "/" + std::to_string(total) + " complete";
  if (!misses.empty()) detail += "; " + join(misses, "; ");
  return {misses.empty(), detail};
}

// 3. (2) and (4, 6) over Z.
Check generator_independence(std::uint64_t) {
  Ring z = Ring::integers();
  IdealSpec a(z, {z.from_integer(2)}), b(z, {z.from_integer(4), z.from_integer(6)});
  std::string va = koszul_complete_check(a, 8).verdict, vb = koszul_complete_check(b, 8).verdict;
  HomComparison ha = hom_set_comparison(koszul(a), koszul(a), a, 2);
  HomComparison hb = hom_set_comparison(koszul(b), koszul(b), b, 2);
  bool ok = va == "complete" && vb == "complete" && ha.verdict == "isomorphic" && hb.verdict == "isomorphic";
  return {ok, "(2): " + va + ", End " + ha.verdict + "; (4, 6): " + vb + ", End " + hb.verdict};
}

// 4. Tower laws over Z and Z/30.
Check tower_laws(std::uint64_t seed) {
  PropertyReport z = check_tower_laws(Ring::integers(), 3, 5, seed, 8);
  PropertyReport m = check_tower_laws(Ring::integers_mod(30), 3, 5, seed + 1, 8);
  std::vector<std::string> fails = z.failures;
  fails.insert(fails.end(), m.failures.begin(), m.failures.end());
  std::string detail = std::to_string(z.instances + m.instances) + " (ideal, n) instances";
  if (!fails.empty()) detail += "; failures: " + join(fails, "; ");
  return {z.passed() && m.passed(), detail};
}

// 5. Derived completion of the unit.
Check unit_completion(std::uint64_t) {
  const Integer p = 5;
  const int n = 6;
  Ring z = Ring::integers(), q = Ring::rationals();
  CompletionReport zp = derived_completion(FreeComplex::unit(z), IdealSpec(z, {z.from_integer(p)}), n);
  CompletionReport qp = derived_completion(FreeComplex::unit(q), IdealSpec(q, {q.from_integer(p)}), n);
  CompletionReport z1 = derived_completion(FreeComplex::unit(z), IdealSpec(z, {z.from_integer(1)}), n);
  const DegreeReport& d0 = zp.degree(0);
  bool ok = d0.lim_kind == "pro-cyclic" && d0.ml_at.has_value() &&
            d0.lim.torsion == std::vector<Rational>{Rational(power(p, n))} && d0.lim.free_rank == 0;
  for (const auto& d : zp.degrees) ok = ok && d.lim1 == "vanishes";
  auto vanishes = [](const CompletionReport& r) {
    for (const auto& d : r.degrees)
      if (d.lim_kind != "stable" || !d.lim.is_zero() || !d.holim || !d.holim->is_zero()) return false;
    return true;
  };
  bool q_zero = vanishes(qp), one_zero = vanishes(z1);
  std::ostringstream detail;
  detail << "Z at (5): degree 0 " << d0.lim_kind << ", truncation " << d0.lim.text() << ", ML at "
         << (d0.ml_at ? std::to_string(*d0.ml_at) : "-") << ", lim1 " << d0.lim1 << "; Q at (5): "
         << (q_zero ? "0" : "nonzero") << "; Z at (1): " << (one_zero ? "0" : "nonzero");
  return {ok && q_zero && one_zero, detail.str()};
}

// 6. Derived completeness of modules, and classical => derived on every certified module.
Check derived_completeness(std::uint64_t) {
  const Integer p = 5;
  Ring z = Ring::integers(), zl = Ring::localized(p);
  std::vector<std::string> misses;
  for (int k = 1; k <= 4; ++k) {
    CheckResult c = derived_complete_check(ModuleSpec::cyclic(z, z.from_integer(power(p, k))), z.from_integer(p), 6);
    if (c.verdict != "complete") misses.push_back("Z/5^" + std::to_string(k) + " -> " + c.verdict);
  }
  CheckResult zc = derived_complete_check(ModuleSpec::free(z, 1), z.from_integer(p), 6);
  bool witness = zc.verdict == "not_complete" && zc.witness.contains("target");
  if (!witness) misses.push_back("Z -> " + zc.verdict);

  struct Case {
    ModuleSpec m;
    IdealSpec ideal;
  };
  Ring zmod = Ring::integers_mod(100);
  std::vector<Case> cases{
      {ModuleSpec::cyclic(z, z.from_integer(25)), IdealSpec(z, {z.from_integer(5)})},
      {ModuleSpec::cyclic(z, z.from_integer(75)), IdealSpec(z, {z.from_integer(5)})},
      {ModuleSpec::cyclic(z, z.from_integer(8)), IdealSpec(z, {z.from_integer(6)})},
      {ModuleSpec::free(z, 2), IdealSpec(z, {z.from_integer(0)})},
      {ModuleSpec::cyclic(zl, zl.from_integer(125)), IdealSpec(zl, {zl.from_integer(5)})},
      {ModuleSpec::free(zl, 1), IdealSpec(zl, {zl.from_integer(5)})},
      {ModuleSpec::ring_itself(zmod), IdealSpec(zmod, {zmod.from_integer(10)})},
      {ModuleSpec::ring_itself(zmod), IdealSpec(zmod, {zmod.from_integer(2)})},
      {ModuleSpec::cyclic(z, z.from_integer(7)), IdealSpec(z, {z.from_integer(1)})},
  };
  int certified = 0;
  for (const auto& c : cases) {
    ModuleCompletion mc = complete_module(c.m, c.ideal, 8);
    if (!mc.classically_complete) continue;
    ++certified;
    for (const auto& s : c.ideal.generators) {
      CheckResult d = derived_complete_check(c.m, s, 6);
      if (d.verdict != "complete")
        misses.push_back(c.m.text() + " at " + c.ideal.to_json().dump() + " classically complete but " + d.verdict);
    }
  }
  std::string detail = "Z/5^k complete for k = 1..4; Z at (5) " + zc.verdict + " with truncation witness; " +
                       std::to_string(certified) + " classically complete presets derived complete";
  if (!misses.empty()) detail += "; misses: " + join(misses, "; ");
  return {misses.empty() && certified >= 5, detail};
}

// 7. Lifting a 2x2 idempotent from Z/5 to Z/5^6.
Check idempotent_lifting(std::uint64_t) {
  Ring z = Ring::integers();
  RingTower tower(IdealSpec(z, {z.from_integer(5)}), 6);
  Matrix e(2, 2);
  e(0, 0) = z.from_integer(2);
  e(0, 1) = z.from_integer(1);
  e(1, 0) = z.from_integer(3);
  e(1, 1) = z.from_integer(4);
  IdempotentLift lift = idempotent_lift(e, tower, 6);
  bool ok = lift.verified && lift.stages.size() == 6;
  for (int n = 1; n <= 6 && ok; ++n) {
    const Ring& rn = tower.stage(n).ring;
    const Matrix& f = lift.stages[static_cast<std::size_t>(n - 1)];
    ok = multiply(rn, f, f) == f;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) ok = ok && tower.reduce(f(i, j), n, 1) == tower.stage(1).ring.canonical(e(i, j));
  }
  const Ring& top = tower.stage(6).ring;
  return {ok, "E = [[2, 1], [3, 4]] over Z/5 lifts to " + matrix_to_json(top, lift.result()).dump() + " over " +
                  top.display_name()};
}

// 8. End of Kos_Z(p) over R and over the truncated completion.
Check hom_comparison(std::uint64_t) {
  Ring z = Ring::integers();
  IdealSpec ideal(z, {z.from_integer(5)});
  FreeComplex k = koszul(ideal);
  HomComparison h = hom_set_comparison(k, k, ideal, 1);
  auto total = [](const std::map<int, ModuleInvariant>& g) {
    std::vector<Rational> t;
    std::size_t free = 0;
    for (const auto& [i, inv] : g) {
      t.insert(t.end(), inv.torsion.begin(), inv.torsion.end());
      free += inv.free_rank;
    }
    std::sort(t.begin(), t.end());
    return std::pair{free, t};
  };
  auto [lfree, lt] = total(h.lhs);
  auto [rfree, rt] = total(h.rhs);
  const std::vector<Rational> expected{Rational(5), Rational(5)};
  ModuleInvariant end0 = hom_group(k, k);
  bool ok = h.verdict == "isomorphic" && lfree == 0 && rfree == 0 && lt == expected && rt == expected &&
            h.annihilation_exponent == 1 && h.precision >= 2;
  return {ok, "graded End torsion " + torsion_text(lt) + " over R, " + torsion_text(rt) +
                  " over the completion (precision " + std::to_string(h.precision) + ", annihilation exponent " +
                  std::to_string(h.annihilation_exponent) + "); degree-0 End " + end0.text()};
}

// 9. Property suite.
Check lemma_suite(std::uint64_t seed) {
  std::vector<PropertyReport> reports{check_reduction_vanishing(seed, 12), check_nilpotent_bound(5, seed + 1, 12),
                                      check_vanishing_limit(5, 4, seed + 2, 12), check_stage_bounds(seed + 3, 12),
                                      check_reduced_stage(seed + 4, 12)};
  bool ok = true;
  std::vector<std::string> parts, fails;
  for (const auto& r : reports) {
    bool pass = r.passed() && r.instances >= 10;
    ok = ok && pass;
    parts.push_back(r.name + " " + std::to_string(r.instances - static_cast<int>(r.failures.size())) + "/" +
                    std::to_string(r.instances));
    for (const auto& f : r.failures) fails.push_back(r.name + ": " + f);
  }
  std::string detail = join(parts, "; ");
  if (!fails.empty()) detail += "; replay: " + join(fails, "; ");
  return {ok, detail};
}

// 10. Iterated amplitude descent over Z/25.
Check amplitude_descent(std::uint64_t seed) {
  Ring ring = Ring::integers_mod(25);
  IdealSpec ideal(ring, {ring.from_integer(5)});
  Rng rng(seed);
  int instances = 0, max_steps = 0;
  std::vector<std::string> fails;
  for (int tries = 0; instances < 15 && tries < 500; ++tries) {
    std::vector<Piece> pieces;
    int count = static_cast<int>(uniform(rng, 1, 4));
    for (int k = 0; k < count; ++k) {
      int deg = static_cast<int>(uniform(rng, 0, 3));
      long long kind = uniform(rng, 0, 3);
      if (kind == 0) pieces.push_back({Piece::Kind::Unit, deg, {}});
      else pieces.push_back({Piece::Kind::Cone, deg, ring.from_integer(kind == 1 ? 1 : kind == 2 ? 5 : 0)});
    }
    FreeComplex d = scramble(assemble(ring, pieces), rng);
    int amplitude = mod_amplitude(d, ideal);
    if (amplitude < 0 || amplitude > 3) continue;
    ++instances;
    int steps = 0;
    bool ok = true;
    for (;;) {
      try {
        DescentStep s = amplitude_descent_step(d, ideal);
        ++steps;
        ok = ok && s.amplitude_after < s.amplitude_before;
        d = s.next;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroInput) throw;
        break;
      }
      if (steps > amplitude + 1) {
        ok = false;
        break;
      }
    }
    max_steps = std::max(max_steps, steps);
    if (!ok || steps > amplitude + 1)
      fails.push_back(describe(ring, pieces) + " (amplitude " + std::to_string(amplitude) + ", " +
                      std::to_string(steps) + " steps)");
  }
  std::string detail = std::to_string(instances) + " complexes, at most " + std::to_string(max_steps) +
                       " steps, amplitude strictly decreasing";
  if (!fails.empty()) detail = std::to_string(instances) + " complexes; failures: " + join(fails, "; ");
  return {fails.empty() && instances >= 10, detail};
}

// 11. Smith normal form over Z and Z_(5).
Check smith_kernel(std::uint64_t seed) {
  Rng rng(seed);
  int done = 0;
  std::vector<std::string> fails;
  for (const Ring& ring : {Ring::integers(), Ring::localized(5)}) {
    const Pid pid = ring.pid();
    for (int c = 0; c < 200; ++c) {
      auto rows = static_cast<std::size_t>(uniform(rng, 1, 5)), cols = static_cast<std::size_t>(uniform(rng, 1, 5));
      RMat a(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          Rational x(uniform(rng, -20, 20));
          if (ring.kind() == RingKind::LocalizedAtPrime) x /= Rational(uniform(rng, 1, 4));
          a(i, j) = uniform(rng, 0, 3) == 0 ? Rational(0) : pid.canonical(x);
        }
      SmithForm f = smith_form(pid, a);
      bool ok = multiply(pid, multiply(pid, f.u, a), f.v) == f.d &&
                multiply(pid, f.u, f.u_inv) == identity_matrix(rows) &&
                multiply(pid, f.v, f.v_inv) == identity_matrix(cols) && pid.is_unit(determinant(pid, f.u)) &&
                pid.is_unit(determinant(pid, f.v));
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (i != j && f.d(i, j) != 0) ok = false;
      for (std::size_t i = 0; i + 1 < f.rank; ++i) ok = ok && pid.divides(f.d(i, i), f.d(i + 1, i + 1));
      for (std::size_t i = f.rank; i < std::min(rows, cols); ++i) ok = ok && f.d(i, i) == 0;
      auto [p, p_inv] = random_unimodular(ring, rows, rng);
      auto [q, q_inv] = random_unimodular(ring, cols, rng);
      RMat changed = multiply(pid, multiply(pid, to_rational(p), a), to_rational(q));
      ok = ok && cokernel_invariant(changed, pid) == cokernel_invariant(a, pid);
      ++done;
      if (!ok) fails.push_back(ring.display_name() + " " + matrix_to_json(ring, from_rational(a)).dump());
    }
  }
  std::string detail = std::to_string(done - static_cast<int>(fails.size())) + "/" + std::to_string(done) +
                       " matrices: U A V = D, unit determinants, divisor chain, cokernel invariant under basis change";
  if (!fails.empty()) detail += "; failures: " + join(fails, "; ");
  return {fails.empty(), detail};
}

struct Entry {
  const char* title;
  Check (*run)(std::uint64_t);
};

const Entry kEntries[] = {
    {"counterexample reproduction", counterexample},
    {"noetherian positivity", noetherian},
    {"generator independence", generator_independence},
    {"tower laws", tower_laws},
    {"derived completion of the unit", unit_completion},
    {"derived-completeness criterion", derived_completeness},
    {"idempotent lifting", idempotent_lifting},
    {"hom comparison", hom_comparison},
    {"lemma suite", lemma_suite},
    {"amplitude descent", amplitude_descent},
    {"SNF kernel", smith_kernel},
};

}  // namespace

CriterionResult run(int id, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(std::size(kEntries)))
    throw Error(ErrorKind::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  auto start = std::chrono::steady_clock::now();
  try {
    auto [pass, detail] = e.run(seed + static_cast<std::uint64_t>(id));
    r.pass = pass;
    r.detail = detail;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(kEntries)); ++id) {
    out.push_back(run(id, seed));
    if (report) report(out.back());
  }
  return out;
}

std::string format(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail;
  return out.str();
}

}  // namespace koszulkit::selftest
