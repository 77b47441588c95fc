#include "koszulkit/homology.hpp"

#include "koszulkit/error.hpp"

namespace koszulkit {

namespace {

std::vector<Rational> apply(const Pid& pid, const RMat& a, const std::vector<Rational>& x) {
  std::vector<Rational> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && x[k] != 0) acc += a(i, k) * x[k];
    y[i] = pid.canonical(acc);
  }
  return y;
}

Rational divide(const Pid& pid, const Rational& x, const Rational& d) {
  if (pid.is_unit(d)) return pid.mul(x, pid.inverse(d));
  return pid.canonical(x / d);
}

}  // namespace

std::vector<Rational> HomologyGroup::generator(std::size_t j) const {
  std::vector<Rational> g(generators_.rows());
  for (std::size_t r = 0; r < g.size(); ++r) g[r] = generators_(r, kept_.at(j));
  return g;
}

std::vector<Rational> HomologyGroup::coordinates(const std::vector<Rational>& cycle) const {
  auto c = apply(pid_, uy_, apply(pid_, to_cycle_coords_, cycle));
  std::vector<Rational> out;
  for (std::size_t j = 0; j < kept_.size(); ++j) out.push_back(pid_.reduce(c[kept_[j]], orders_[j]));
  return out;
}

HomologyGroup homology_group(const FreeComplex& t, int i) {
  CoefficientDomain cd = coefficient_domain(t.ring());
  const Pid& pid = cd.pid;
  HomologyGroup h;
  h.degree_ = i;
  h.pid_ = pid;
  h.modulus_ = cd.modulus;
  const std::size_t n = t.rank(i);
  const std::size_t below = t.rank(i - 1);
  RMat d = to_rational(t.d(i));
  RMat e = to_rational(t.d(i + 1));

  // Cycles: Z = {x : d x = 0 (mod m)}, the first n coordinates of ker [d | m I].
  RMat k;
  if (cd.modulus != 0) {
    RMat aug(below, n + below);
    aug.set_block(0, 0, d);
    for (std::size_t r = 0; r < below; ++r) aug(r, n + r) = Rational(cd.modulus);
    RMat kb = kernel_basis(pid, aug);
    k = kb.block(0, n, 0, kb.cols());
  } else {
    k = kernel_basis(pid, d);
  }
  // A basis of Z from the SNF of its generators: U K V = diag(g_j), so the
  // columns of U^{-1}[:, :rank] diag(g_j) span Z.
  SmithForm sg = smith_form(pid, k);
  const std::size_t rank_z = sg.rank;
  RMat zb(n, rank_z);
  h.to_cycle_coords_ = RMat(rank_z, n);
  for (std::size_t j = 0; j < rank_z; ++j) {
    const Rational& gj = sg.d(j, j);
    for (std::size_t r = 0; r < n; ++r) {
      zb(r, j) = pid.mul(sg.u_inv(r, j), gj);
      h.to_cycle_coords_(j, r) = divide(pid, sg.u(j, r), gj);
    }
  }

  // Boundaries (and m * ambient) in the coordinates of that basis.
  std::vector<std::vector<Rational>> bounds;
  for (std::size_t c = 0; c < e.cols(); ++c) {
    std::vector<Rational> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = e(r, c);
    bounds.push_back(col);
  }
  if (cd.modulus != 0)
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Rational> col(n, Rational(0));
      col[r] = Rational(cd.modulus);
      bounds.push_back(col);
    }
  RMat y(rank_z, bounds.size());
  for (std::size_t c = 0; c < bounds.size(); ++c) {
    auto coords = apply(pid, h.to_cycle_coords_, bounds[c]);
    for (std::size_t j = 0; j < rank_z; ++j) y(j, c) = coords[j];
  }
  SmithForm sy = smith_form(pid, y);
  h.uy_ = sy.u;
  h.generators_ = multiply(pid, zb, sy.u_inv);
  for (std::size_t j = 0; j < rank_z; ++j) {
    Rational delta = j < sy.rank ? pid.normalize(sy.d(j, j)) : Rational(0);
    h.all_orders_.push_back(delta);
    if (delta == 0 || !pid.is_unit(delta)) {
      h.kept_.push_back(j);
      h.orders_.push_back(delta);
    }
  }
  h.invariant_ = ModuleInvariant::from_cyclic(pid, h.orders_, cd.validity);
  return h;
}

std::map<int, ModuleInvariant> homology(const FreeComplex& t) {
  std::map<int, ModuleInvariant> out;
  for (int i = t.lo(); i <= t.hi(); ++i) out[i] = homology_group(t, i).invariant();
  return out;
}

RMat induced_map(const ChainMap& f, const HomologyGroup& source, const HomologyGroup& target) {
  if (source.degree() != target.degree())
    throw Error(ErrorKind::InvalidArgument, "induced map between different degrees");
  RMat fi = to_rational(f.component(source.degree()));
  RMat out(target.generator_count(), source.generator_count());
  for (std::size_t j = 0; j < source.generator_count(); ++j) {
    auto image = apply(target.pid(), fi, source.generator(j));
    auto c = target.coordinates(image);
    for (std::size_t r = 0; r < c.size(); ++r) out(r, j) = c[r];
  }
  return out;
}

bool is_acyclic(const FreeComplex& t) {
  for (int i = t.lo(); i <= t.hi(); ++i)
    if (!homology_group(t, i).invariant().is_zero()) return false;
  return true;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f).complex); }

ModuleInvariant hom_group(const FreeComplex& a, const FreeComplex& b) {
  FreeComplex c = tensor(dual(a), b);
  return homology_group(c, 0).invariant();
}

std::map<int, ModuleInvariant> graded_hom(const FreeComplex& a, const FreeComplex& b) {
  return homology(tensor(dual(a), b));
}

std::map<int, ModuleInvariant> completed_homology(const FreeComplex& t) {
  const Ring& ring = t.ring();
  if (ring.kind() != RingKind::TruncatedCompletion || truncation_is_exact(ring)) return homology(t);
  if (!completion_is_torsion_free(ring))
    throw Error(ErrorKind::Inconclusive, "no precision-stable homology over " + ring.display_name());
  const Ring& base = ring.base();
  Pid out_pid = Pid::integers();
  if (base.kind() == RingKind::LocalizedAtPrime) out_pid = base.pid();
  if (base.kind() == RingKind::SquareZero) out_pid = base.base().pid();
  const auto primes = factorize(ring.face().modulus());
  const Validity validity = Validity::modulo(ring.precision());

  // Rank and invariant factors of a residue matrix read p-adically.
  struct Reading {
    std::size_t rank = 0;
    std::vector<int> valuations;
  };
  auto read = [](const Matrix& m, const Integer& p, int e) {
    Reading r;
    for (const auto& d : invariant_factors(Pid::localized(p), to_rational(m))) {
      if (d == 0) continue;
      int v = valuation(d, p);
      if (v >= e) continue;
      ++r.rank;
      r.valuations.push_back(v);
    }
    return r;
  };

  std::map<int, ModuleInvariant> out;
  for (int i = t.lo(); i <= t.hi(); ++i) {
    std::vector<Rational> orders;
    std::optional<std::size_t> free;
    for (const auto& [p, e] : primes) {
      Reading out_d = read(t.d(i), p, e);
      Reading in_d = read(t.d(i + 1), p, e);
      std::size_t f = t.rank(i) - out_d.rank - in_d.rank;
      if (free && *free != f)
        throw Error(ErrorKind::Inconclusive, "free rank of H_" + std::to_string(i) + " differs between p-adic factors");
      free = f;
      for (int v : in_d.valuations)
        if (v > 0) orders.emplace_back(power(p, static_cast<unsigned>(v)));
    }
    orders.insert(orders.end(), free.value_or(t.rank(i)), Rational(0));
    out[i] = ModuleInvariant::from_cyclic(out_pid, orders, validity);
  }
  return out;
}

}  // namespace koszulkit
