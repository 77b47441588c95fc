#include "koszulkit/complex.hpp"

#include "koszulkit/error.hpp"

#include <algorithm>

namespace koszulkit {

namespace {

void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) throw Error(kind, message);
}

Matrix canonical_matrix(const Ring& ring, const Matrix& m) {
  return map_entries(m, [&](const Element& x) { return ring.canonical(x); });
}

Matrix negated(const Ring& ring, const Matrix& m) {
  return map_entries(m, [&](const Element& x) { return ring.neg(x); });
}

}  // namespace

FreeComplex::FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs)
    : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)) {
  require(!ranks_.empty(), ErrorKind::InvalidArgument, "a complex needs at least one degree");
  if (diffs.size() + 1 == ranks_.size()) diffs.insert(diffs.begin(), Matrix());
  require(diffs.size() == ranks_.size(), ErrorKind::InvalidArgument, "wrong number of differentials");
  diffs_.assign(ranks_.size(), Matrix());
  diffs_[0] = Matrix(0, ranks_[0]);
  for (std::size_t k = 1; k < ranks_.size(); ++k) {
    const Matrix& m = diffs[k];
    // An empty matrix is accepted as shorthand for zero.
    if (m.rows() == 0 && m.cols() == 0 && (ranks_[k - 1] != 0 || ranks_[k] != 0)) {
      diffs_[k] = Matrix(ranks_[k - 1], ranks_[k]);
      continue;
    }
    if (!(m.rows() == ranks_[k - 1] && m.cols() == ranks_[k])) throw Error(ErrorKind::InvalidArgument, "differential d_" + std::to_string(lo + static_cast<int>(k)) + " has the wrong shape");
    diffs_[k] = canonical_matrix(ring_, m);
  }
  for (std::size_t k = 2; k < ranks_.size(); ++k)
    if (!is_zero_matrix(multiply(ring_, diffs_[k - 1], diffs_[k]))) throw Error(ErrorKind::InvalidArgument, "d_" + std::to_string(lo + static_cast<int>(k) - 1) + " d_" + std::to_string(lo + static_cast<int>(k)) +
                " is not zero");
}

FreeComplex FreeComplex::unit(const Ring& ring) { return FreeComplex(ring, 0, {1}, {}); }

FreeComplex FreeComplex::zero(const Ring& ring) { return FreeComplex(ring, 0, {0}, {}); }

FreeComplex FreeComplex::two_term(const Ring& ring, const Element& s) {
  Matrix d(1, 1);
  d(0, 0) = s;
  return FreeComplex(ring, 0, {1, 1}, {d});
}

std::size_t FreeComplex::rank(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return ranks_[static_cast<std::size_t>(i - lo_)];
}

Matrix FreeComplex::d(int i) const {
  if (i <= lo_ || i > hi()) return Matrix(rank(i - 1), rank(i));
  return diffs_[static_cast<std::size_t>(i - lo_)];
}

std::size_t FreeComplex::total_rank() const {
  std::size_t total = 0;
  for (auto r : ranks_) total += r;
  return total;
}

bool FreeComplex::operator==(const FreeComplex& other) const {
  if (ring_ != other.ring_) return false;
  int a = std::min(lo_, other.lo_), b = std::max(hi(), other.hi());
  for (int i = a; i <= b + 1; ++i)
    if (rank(i) != other.rank(i) || !(d(i) == other.d(i))) return false;
  return true;
}

json FreeComplex::to_json() const {
  json ranks = json::object(), diffs = json::object();
  for (int i = lo_; i <= hi(); ++i) {
    ranks[std::to_string(i)] = rank(i);
    if (i > lo_ && rank(i) > 0 && rank(i - 1) > 0) diffs[std::to_string(i)] = matrix_to_json(ring_, d(i));
  }
  return json{{"ring", ring_.descriptor()}, {"range", {lo_, hi()}}, {"ranks", ranks}, {"differentials", diffs}};
}

FreeComplex FreeComplex::from_json(const json& value, const Ring* ring_override) {
  require(value.is_object(), ErrorKind::Parse, "complex must be a JSON object");
  Ring ring = ring_override ? *ring_override : parse_ring(value.at("ring"));
  int lo = 0, hi = 0;
  if (value.contains("range")) {
    lo = value.at("range").at(0).get<int>();
    hi = value.at("range").at(1).get<int>();
  } else {
    bool first = true;
    for (const auto& [key, _] : value.at("ranks").items()) {
      int i = std::stoi(key);
      lo = first ? i : std::min(lo, i);
      hi = first ? i : std::max(hi, i);
      first = false;
    }
  }
  require(lo <= hi, ErrorKind::Parse, "empty degree range");
  std::vector<std::size_t> ranks(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [key, r] : value.at("ranks").items()) {
    int i = std::stoi(key);
    require(i >= lo && i <= hi, ErrorKind::Parse, "rank outside the degree range");
    ranks[static_cast<std::size_t>(i - lo)] = r.get<std::size_t>();
  }
  std::vector<Matrix> diffs(ranks.size());
  if (value.contains("differentials"))
    for (const auto& [key, m] : value.at("differentials").items()) {
      int i = std::stoi(key);
      if (i <= lo || i > hi) throw Error(ErrorKind::Parse, "differential d_" + key + " outside the degree range");
      diffs[static_cast<std::size_t>(i - lo)] = matrix_from_json(ring, m);
    }
  return FreeComplex(ring, lo, ranks, diffs);
}

// ---------------------------------------------------------------------------

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::vector<Matrix> components, int lo)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo), comps_(std::move(components)) {
  const Ring& ring = source_.ring();
  require(ring == target_.ring(), ErrorKind::RingMismatch, "chain map between complexes over different rings");
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    int i = lo_ + static_cast<int>(k);
    Matrix& m = comps_[k];
    if (m.rows() == 0 && m.cols() == 0) m = Matrix(target_.rank(i), source_.rank(i));
    if (!(m.rows() == target_.rank(i) && m.cols() == source_.rank(i))) throw Error(ErrorKind::InvalidArgument, "chain map component " + std::to_string(i) + " has the wrong shape");
    m = canonical_matrix(ring, m);
  }
  int a = std::min(source_.lo(), target_.lo()), b = std::max(source_.hi(), target_.hi()) + 1;
  for (int i = a; i <= b; ++i) {
    Matrix left = multiply(ring, target_.d(i), component(i));
    Matrix right = multiply(ring, component(i - 1), source_.d(i));
    if (left != right) throw Error(ErrorKind::InvalidArgument, "map does not commute with the differentials in degree " + std::to_string(i));
  }
}

ChainMap ChainMap::identity(const FreeComplex& c) {
  std::vector<Matrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i) comps.push_back(identity_matrix(c.ring(), c.rank(i)));
  return ChainMap(c, c, comps, c.lo());
}

ChainMap ChainMap::zero(const FreeComplex& source, const FreeComplex& target) {
  return ChainMap(source, target, {}, 0);
}

ChainMap ChainMap::scalar(const Ring& ring, const Element& s) {
  Matrix m(1, 1);
  m(0, 0) = s;
  FreeComplex u = FreeComplex::unit(ring);
  return ChainMap(u, u, {m}, 0);
}

Matrix ChainMap::component(int i) const {
  if (i < lo_ || i >= lo_ + static_cast<int>(comps_.size())) return Matrix(target_.rank(i), source_.rank(i));
  return comps_[static_cast<std::size_t>(i - lo_)];
}

json ChainMap::to_json() const {
  json comps = json::object();
  int a = std::min(source_.lo(), target_.lo()), b = std::max(source_.hi(), target_.hi());
  for (int i = a; i <= b; ++i)
    if (source_.rank(i) > 0 && target_.rank(i) > 0)
      comps[std::to_string(i)] = matrix_to_json(source_.ring(), component(i));
  return json{{"source", source_.to_json()}, {"target", target_.to_json()}, {"components", comps}};
}

// ---------------------------------------------------------------------------

Cone cone(const ChainMap& f) {
  const FreeComplex& a = f.source();
  const FreeComplex& b = f.target();
  const Ring& ring = a.ring();
  int lo = std::min(b.lo(), a.lo() + 1), hi = std::max(b.hi(), a.hi() + 1);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(b.rank(i) + a.rank(i - 1));
    Matrix d(b.rank(i - 1) + a.rank(i - 2), b.rank(i) + a.rank(i - 1));
    d.set_block(0, 0, b.d(i));
    d.set_block(0, b.rank(i), f.component(i - 1));
    d.set_block(b.rank(i - 1), b.rank(i), negated(ring, a.d(i - 1)));
    diffs.push_back(d);
  }
  FreeComplex c(ring, lo, ranks, diffs);
  FreeComplex sa = shift(a, 1);
  std::vector<Matrix> inc, proj;
  for (int i = lo; i <= hi; ++i) {
    Matrix in(c.rank(i), b.rank(i));
    in.set_block(0, 0, identity_matrix(ring, b.rank(i)));
    inc.push_back(in);
    Matrix pr(a.rank(i - 1), c.rank(i));
    pr.set_block(0, b.rank(i), identity_matrix(ring, a.rank(i - 1)));
    proj.push_back(pr);
  }
  return Cone{c, ChainMap(b, c, inc, lo), ChainMap(c, sa, proj, lo)};
}

FreeComplex shift(const FreeComplex& t, int k) {
  const Ring& ring = t.ring();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = t.lo(); i <= t.hi(); ++i) {
    ranks.push_back(t.rank(i));
    diffs.push_back(k % 2 == 0 ? t.d(i) : negated(ring, t.d(i)));
  }
  return FreeComplex(ring, t.lo() + k, ranks, diffs);
}

ChainMap shift(const ChainMap& f, int k) {
  FreeComplex s = shift(f.source(), k), t = shift(f.target(), k);
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  std::vector<Matrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(f.component(i));
  return ChainMap(s, t, comps, lo + k);
}

namespace {

// Layout of the total complex in one degree: block offsets by p.
struct TensorDegree {
  std::vector<int> ps;
  std::vector<std::size_t> offsets;
  std::size_t rank = 0;
};

TensorDegree layout(const FreeComplex& a, const FreeComplex& b, int n, int plo, int phi) {
  TensorDegree t;
  for (int p = plo; p <= phi; ++p) {
    std::size_t r = a.rank(p) * b.rank(n - p);
    t.ps.push_back(p);
    t.offsets.push_back(t.rank);
    t.rank += r;
  }
  return t;
}

std::size_t offset_of(const TensorDegree& t, int p) {
  auto it = std::find(t.ps.begin(), t.ps.end(), p);
  return t.offsets[static_cast<std::size_t>(it - t.ps.begin())];
}

}  // namespace

FreeComplex tensor(const FreeComplex& a, const FreeComplex& b) {
  require(a.ring() == b.ring(), ErrorKind::RingMismatch, "tensor of complexes over different rings");
  const Ring& ring = a.ring();
  int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    TensorDegree src = layout(a, b, n, a.lo(), a.hi());
    TensorDegree dst = layout(a, b, n - 1, a.lo(), a.hi());
    ranks.push_back(src.rank);
    Matrix d(dst.rank, src.rank);
    for (int p = a.lo(); p <= a.hi(); ++p) {
      int q = n - p;
      if (a.rank(p) * b.rank(q) == 0) continue;
      std::size_t col = offset_of(src, p);
      if (p - 1 >= a.lo() && a.rank(p - 1) * b.rank(q) > 0)
        d.set_block(offset_of(dst, p - 1), col, kronecker(ring, a.d(p), identity_matrix(ring, b.rank(q))));
      if (a.rank(p) * b.rank(q - 1) > 0) {
        Matrix right = kronecker(ring, identity_matrix(ring, a.rank(p)), b.d(q));
        d.set_block(offset_of(dst, p), col, p % 2 == 0 ? right : negated(ring, right));
      }
    }
    diffs.push_back(d);
  }
  return FreeComplex(ring, lo, ranks, diffs);
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  FreeComplex s = tensor(f.source(), g.source()), t = tensor(f.target(), g.target());
  const Ring& ring = s.ring();
  std::vector<Matrix> comps;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    TensorDegree src = layout(f.source(), g.source(), n, f.source().lo(), f.source().hi());
    TensorDegree dst = layout(f.target(), g.target(), n, f.target().lo(), f.target().hi());
    Matrix m(t.rank(n), s.rank(n));
    for (int p = f.source().lo(); p <= f.source().hi(); ++p) {
      int q = n - p;
      if (f.source().rank(p) * g.source().rank(q) == 0) continue;
      if (p < f.target().lo() || p > f.target().hi() || f.target().rank(p) * g.target().rank(q) == 0) continue;
      m.set_block(offset_of(dst, p), offset_of(src, p), kronecker(ring, f.component(p), g.component(q)));
    }
    comps.push_back(m);
  }
  return ChainMap(s, t, comps, s.lo());
}

FreeComplex dual(const FreeComplex& a) {
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = -a.hi(); i <= -a.lo(); ++i) {
    ranks.push_back(a.rank(-i));
    diffs.push_back(a.d(1 - i).transposed());
  }
  return FreeComplex(a.ring(), -a.hi(), ranks, diffs);
}

FreeComplex base_change(const FreeComplex& t, const RingMap& phi) {
  require(t.ring() == phi.source, ErrorKind::RingMismatch, "base change along a map from a different ring");
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = t.lo(); i <= t.hi(); ++i) {
    ranks.push_back(t.rank(i));
    diffs.push_back(map_entries(t.d(i), phi.apply));
  }
  return FreeComplex(phi.target, t.lo(), ranks, diffs);
}

ChainMap base_change(const ChainMap& f, const RingMap& phi) {
  FreeComplex s = base_change(f.source(), phi), t = base_change(f.target(), phi);
  int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
  std::vector<Matrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(map_entries(f.component(i), phi.apply));
  return ChainMap(s, t, comps, lo);
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  require(f.target() == g.source(), ErrorKind::InvalidArgument, "maps are not composable");
  const Ring& ring = f.source().ring();
  int lo = std::min(f.source().lo(), g.target().lo()), hi = std::max(f.source().hi(), g.target().hi());
  std::vector<Matrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(multiply(ring, g.component(i), f.component(i)));
  return ChainMap(f.source(), g.target(), comps, lo);
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  require(a.ring() == b.ring(), ErrorKind::RingMismatch, "direct sum of complexes over different rings");
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(a.rank(i) + b.rank(i));
    Matrix d(a.rank(i - 1) + b.rank(i - 1), a.rank(i) + b.rank(i));
    d.set_block(0, 0, a.d(i));
    d.set_block(a.rank(i - 1), a.rank(i), b.d(i));
    diffs.push_back(d);
  }
  return FreeComplex(a.ring(), lo, ranks, diffs);
}

FreeComplex change_basis(const FreeComplex& t, int i, const Matrix& g, const Matrix& g_inv) {
  const Ring& ring = t.ring();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int k = t.lo(); k <= t.hi(); ++k) {
    ranks.push_back(t.rank(k));
    Matrix d = t.d(k);
    if (k == i) d = multiply(ring, d, g_inv);
    if (k == i + 1) d = multiply(ring, g, d);
    diffs.push_back(d);
  }
  return FreeComplex(ring, t.lo(), ranks, diffs);
}

}  // namespace koszulkit
