// Command-line front end for the koszulkit library.
#include "koszulkit/completion.hpp"
#include "koszulkit/criteria.hpp"
#include "koszulkit/error.hpp"
#include "koszulkit/homology.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/selftest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace koszulkit;

namespace {

constexpr int kExitUsage = 2;

struct Options {
  std::string format = "text";
  int precision = 8;
  std::uint64_t seed = 20240601;
  std::string ring = "Z";
  std::string p = "5";
  std::string s = "p";
  std::string module = "R";
  std::string complex;
  std::string a, b;
  std::string matrix;
  std::string name;
  int criterion = 0;
  bool iterate = false;
};

json read_json(const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) return json::parse(text);
  std::ifstream in(text);
  if (!in) throw Error(ErrorKind::InvalidArgument, "--complex: cannot open '" + text + "'");
  return json::parse(in);
}

Ring ring_of(const Options& o) { return ring_from_name(o.ring, parse_integer(o.p)); }

// "p" and "p^k" name the prime given by --p.
std::string substitute_prime(std::string token, const std::string& p) {
  if (token == "p") return p;
  if (token.rfind("p^", 0) == 0) return p + token.substr(1);
  if (token.rfind("-p", 0) == 0) return "-" + substitute_prime(token.substr(1), p);
  return token;
}

IdealSpec ideal_of(const Ring& ring, const Options& o) {
  std::vector<Element> gens;
  std::stringstream ss(o.s);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    std::string t = substitute_prime(token, o.p);
    json value = t[0] == '[' ? json::parse(t) : json(t);
    gens.push_back(ring.parse(value));
  }
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "--s: at least one generator is needed");
  return IdealSpec(ring, gens);
}

FreeComplex complex_of(const std::string& text, const Ring& ring, bool ring_given) {
  json value = read_json(text);
  if (value.contains("ring") && !ring_given) return FreeComplex::from_json(value);
  return FreeComplex::from_json(value, &ring);
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string homology_table(const std::map<int, ModuleInvariant>& h) {
  std::ostringstream out;
  for (auto it = h.rbegin(); it != h.rend(); ++it) out << "H_" << it->first << " = " << it->second.text() << "\n";
  return out.str();
}

json homology_json(const std::map<int, ModuleInvariant>& h) {
  json out = json::object();
  for (const auto& [i, inv] : h) out[std::to_string(i)] = inv.to_json();
  return out;
}

int verdict_exit(const std::string& v) {
  if (v == "complete" || v == "separated" || v == "isomorphic" || v == "determined") return 0;
  if (v == "inconclusive") return 3;
  return 1;
}

std::string check_text(const CheckResult& r) {
  std::ostringstream out;
  out << r.check << ": " << r.verdict << "\n  " << r.reason << "\n";
  if (!r.witness.is_null()) out << "  witness: " << r.witness.dump() << "\n";
  return out.str();
}

// Combined verdict of derived completeness along every generator.
CheckResult combine(const std::vector<CheckResult>& parts) {
  CheckResult out = parts.front();
  for (const auto& p : parts) {
    if (p.verdict == "not_complete") return p;
    if (p.verdict == "inconclusive") out = p;
  }
  return out;
}

int run_homology(const Options& o, bool ring_given) {
  FreeComplex t = complex_of(o.complex, ring_of(o), ring_given);
  auto h = t.ring().kind() == RingKind::TruncatedCompletion ? completed_homology(t) : homology(t);
  emit(o, json{{"ring", t.ring().descriptor()}, {"homology", homology_json(h)}},
       "homology over " + t.ring().display_name() + "\n" + homology_table(h));
  return 0;
}

int run_koszul(const Options& o) {
  IdealSpec ideal = ideal_of(ring_of(o), o);
  FreeComplex k = koszul(ideal);
  std::map<int, ModuleInvariant> h;
  if (ideal.ring.kind() == RingKind::SquareZero && ideal.size() == 1) {
    auto [h0, h1] = koszul_principal_homology(ideal);
    h = {{0, h0}, {1, h1}};
  } else {
    h = homology(k);
  }
  std::ostringstream text;
  std::string gens;
  for (const auto& g : ideal.generators) gens += (gens.empty() ? "" : ", ") + ideal.ring.render_text(g);
  text << "Kos(" << gens << ") over " << ideal.ring.display_name() << "\n";
  for (int i = k.hi(); i >= k.lo(); --i) text << "  rank " << i << ": " << k.rank(i) << "\n";
  text << homology_table(h);
  emit(o, json{{"complex", k.to_json()}, {"homology", homology_json(h)}}, text.str());
  return 0;
}

int run_tower(const Options& o) {
  KoszulTower tower(ideal_of(ring_of(o), o));
  json stages = json::array();
  std::ostringstream text;
  for (int n = 1; n <= o.precision; ++n) {
    json r = tower.stage_report(n);
    stages.push_back(r);
    text << "k^(" << n << "): pq square " << r.at("pq_square").get<std::string>() << ";";
    for (const auto& [i, inv] : r.at("homology").items()) {
      std::string t = inv.at("torsion").dump();
      text << " H_" << i << " free " << inv.at("free") << " torsion " << t << ";";
    }
    text << "\n";
  }
  emit(o, json{{"stages", stages}}, text.str());
  return 0;
}

int run_complete_module(const Options& o) {
  Ring ring = ring_of(o);
  ModuleSpec m = ModuleSpec::parse(o.module, ring, parse_integer(o.p));
  ModuleCompletion c = complete_module(m, ideal_of(ring, o), o.precision);
  std::ostringstream text;
  for (std::size_t n = 0; n < c.stages.size(); ++n) text << "M/I^" << n + 1 << "M = " << c.stages[n].text() << "\n";
  text << "classically complete: " << (c.classically_complete ? "yes" : "not certified") << "\n";
  emit(o, c.to_json(), text.str());
  return 0;
}

int run_derived_completion(const Options& o, bool ring_given) {
  Ring ring = ring_of(o);
  IdealSpec ideal = ideal_of(ring, o);
  FreeComplex t = o.complex.empty() ? FreeComplex::unit(ring) : complex_of(o.complex, ring, ring_given);
  CompletionReport r = derived_completion(t, ideal, o.precision);
  std::ostringstream text;
  for (const auto& d : r.degrees) {
    text << "degree " << d.degree << ": lim " << d.lim_kind;
    if (d.lim_kind != "inconclusive") text << " (" << d.lim.text() << ")";
    text << ", lim1 " << d.lim1 << ", ML at " << (d.ml_at ? std::to_string(*d.ml_at) : "-") << "\n";
  }
  text << "verdict: " << r.verdict << "\n";
  emit(o, r.to_json(), text.str());
  return verdict_exit(r.verdict);
}

int run_derived_complete(const Options& o) {
  Ring ring = ring_of(o);
  ModuleSpec m = ModuleSpec::parse(o.module, ring, parse_integer(o.p));
  IdealSpec ideal = ideal_of(ring, o);
  std::vector<CheckResult> parts;
  for (const auto& s : ideal.generators) parts.push_back(derived_complete_check(m, s, o.precision));
  CheckResult r = combine(parts);
  emit(o, r.to_json(), check_text(r));
  return r.exit_code();
}

int run_separated(const Options& o) {
  Ring ring = ring_of(o);
  ModuleSpec m = ModuleSpec::parse(o.module, ring, parse_integer(o.p));
  CheckResult r = separatedness_check(m, ideal_of(ring, o), o.precision);
  emit(o, r.to_json(), check_text(r));
  return r.exit_code();
}

int run_check_koszul_complete(const Options& o) {
  KoszulCompletenessVerdict v = koszul_complete_check(ideal_of(ring_of(o), o), o.precision);
  std::ostringstream text;
  text << "koszul-complete: " << v.verdict << "\n";
  for (const auto& d : v.per_degree)
    text << "  H_" << d.degree << ": " << d.lhs.text() << " vs " << d.rhs.text() << (d.agree ? "" : "  <- differs")
         << "\n";
  if (v.witness_degree) text << "  witness degree " << *v.witness_degree << "\n";
  text << "  " << v.reason << "\n";
  emit(o, v.to_json(), text.str());
  return v.exit_code();
}

int run_lift_idempotent(const Options& o) {
  Ring ring = ring_of(o);
  IdealSpec ideal = ideal_of(ring, o);
  RingTower tower(ideal, o.precision);
  const Ring& residue = tower.stage(1).ring;
  Matrix e = matrix_from_json(residue, read_json(o.matrix));
  IdempotentLift lift = idempotent_lift(e, tower, o.precision);
  json stages = json::array();
  std::ostringstream text;
  for (std::size_t n = 0; n < lift.stages.size(); ++n) {
    json m = matrix_to_json(tower.stage(static_cast<int>(n) + 1).ring, lift.stages[n]);
    stages.push_back(m);
    text << "stage " << n + 1 << ": " << m.dump() << "\n";
  }
  text << "verified: " << (lift.verified ? "yes" : "no") << "\n";
  emit(o, json{{"stages", stages}, {"verified", lift.verified}}, text.str());
  return lift.verified ? 0 : 1;
}

int run_compare_hom(const Options& o, bool ring_given) {
  Ring ring = ring_of(o);
  IdealSpec ideal = ideal_of(ring, o);
  FreeComplex a = o.a.empty() ? koszul(ideal) : complex_of(o.a, ring, ring_given);
  FreeComplex b = o.b.empty() ? a : complex_of(o.b, ring, ring_given);
  HomComparison h = hom_set_comparison(a, b, ideal, o.precision);
  std::ostringstream text;
  text << "compare-hom: " << h.verdict << " (precision " << h.precision << ", annihilation exponent "
       << h.annihilation_exponent << ")\n";
  text << "over R:\n" << homology_table(h.lhs) << "over the completion:\n" << homology_table(h.rhs);
  text << "  " << h.reason << "\n";
  emit(o, h.to_json(), text.str());
  return h.exit_code();
}

int run_descend(const Options& o, bool ring_given) {
  Ring ring = ring_of(o);
  IdealSpec ideal = ideal_of(ring, o);
  FreeComplex d = complex_of(o.complex, ring, ring_given);
  if (d.ring() != ring) ideal = IdealSpec(d.ring(), ideal_of(d.ring(), o).generators);
  json steps = json::array();
  std::ostringstream text;
  do {
    DescentStep s;
    try {
      s = amplitude_descent_step(d, ideal);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroInput || steps.empty()) throw;
      break;
    }
    steps.push_back(s.to_json());
    text << "step " << steps.size() << ": cover rank " << s.rank << " in degree " << s.bottom << ", amplitude "
         << s.amplitude_before << " -> " << s.amplitude_after << "\n";
    d = s.next;
  } while (o.iterate);
  emit(o, json{{"steps", steps}}, text.str());
  return 0;
}

int run_gallery(const Options& o) {
  std::vector<GalleryEntry> entries;
  if (o.name.empty()) entries = counterexample_gallery();
  else entries.push_back(gallery(o.name, parse_integer(o.p)));
  json out = json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& e : entries) {
    out.push_back(e.to_json());
    ok = ok && e.passed();
    text << (e.passed() ? "[PASS] " : "[FAIL] ") << e.name << ": expected " << e.expected << ", got " << e.actual
         << " (" << e.description << ")\n";
  }
  emit(o, out, text.str());
  return ok ? 0 : 1;
}

int run_selftest(const Options& o) {
  std::vector<selftest::CriterionResult> results;
  if (o.criterion != 0) results.push_back(selftest::run(o.criterion, o.seed));
  else results = selftest::run_all(o.seed);
  json out = json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.pass;
    out.push_back(json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    text << selftest::format(r) << "\n";
  }
  emit(o, out, text.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("KOSZULKIT_PRECISION")) {
    try {
      o.precision = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "KOSZULKIT_PRECISION: not an integer: " << env << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Koszul complexes, completions and derived completeness over PIDs and their relatives"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--precision", o.precision, "Truncation precision N (default 8 or KOSZULKIT_PRECISION)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for randomized runs");
  auto* ring_opt = app.add_option("--ring", o.ring, "Ring: Z, Q, Z/<m>, Zmod:<m>, Fp:<p>, ZLoc:<p>, exa-no[:<p>] or JSON");
  app.add_option("--p", o.p, "Prime used by 'p' in --s and by prime-dependent rings");
  app.add_option("--s", o.s, "Comma-separated ideal generators ('p' names --p)");
  app.add_option("--module", o.module, "Module: R, Z, Z^<n>, Z/<m>, Q, Prufer[:p] or JSON");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* homology_cmd = sub("homology", "Homology of a complex (file or inline JSON)");
  homology_cmd->add_option("--complex", o.complex, "Complex JSON")->required();
  auto* koszul_cmd = sub("koszul", "Koszul complex of --s and its homology");
  auto* tower_cmd = sub("tower", "Stages k^(n) of the Koszul tower up to --precision");
  auto* complete_cmd = sub("complete-module", "Quotients M/I^n M and classical completeness");
  auto* dcompletion_cmd = sub("derived-completion", "Tower report for the derived completion of a complex");
  dcompletion_cmd->add_option("--complex", o.complex, "Complex JSON (default: the unit)");
  auto* dcomplete_cmd = sub("derived-complete", "Derived completeness of --module along --s");
  auto* separated_cmd = sub("separated", "Whether the intersection of I^n M vanishes");
  auto* kc_cmd = sub("check-koszul-complete", "Compare Koszul homology over R and over the completion");
  auto* lift_cmd = sub("lift-idempotent", "Lift an idempotent matrix over R/I to R/I^N");
  lift_cmd->add_option("--matrix", o.matrix, "Idempotent over R/I as a JSON matrix")->required();
  auto* hom_cmd = sub("compare-hom", "Graded Hom over R against the completion");
  hom_cmd->add_option("--a", o.a, "Source complex (default: Koszul object)");
  hom_cmd->add_option("--b", o.b, "Target complex (default: the source)");
  auto* descend_cmd = sub("descend", "Amplitude descent over Z/p^k with I = (p)");
  descend_cmd->add_option("--complex", o.complex, "Complex JSON")->required();
  descend_cmd->add_flag("--iterate", o.iterate, "Repeat until the complex is acyclic modulo I");
  auto* gallery_cmd = sub("gallery", "Run the example presets");
  gallery_cmd->add_option("--name", o.name, "Single preset");
  auto* selftest_cmd = sub("selftest", "Run every acceptance criterion");
  selftest_cmd->add_option("--criterion", o.criterion, "Run one criterion (1-11)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  const bool ring_given = ring_opt->count() > 0;

  try {
    if (*homology_cmd) return run_homology(o, ring_given);
    if (*koszul_cmd) return run_koszul(o);
    if (*tower_cmd) return run_tower(o);
    if (*complete_cmd) return run_complete_module(o);
    if (*dcompletion_cmd) return run_derived_completion(o, ring_given);
    if (*dcomplete_cmd) return run_derived_complete(o);
    if (*separated_cmd) return run_separated(o);
    if (*kc_cmd) return run_check_koszul_complete(o);
    if (*lift_cmd) return run_lift_idempotent(o);
    if (*hom_cmd) return run_compare_hom(o, ring_given);
    if (*descend_cmd) return run_descend(o, ring_given);
    if (*gallery_cmd) return run_gallery(o);
    if (*selftest_cmd) return run_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Parse: return kExitUsage;
      case ErrorKind::Inconclusive: return 3;
      default: return 1;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
