// Independent reference computations for the tests. Nothing here goes
// through the library's Smith normal form or homology code.
#pragma once

#include "koszulkit/complex.hpp"
#include "koszulkit/module_invariant.hpp"

#include <functional>
#include <set>
#include <vector>

namespace oracle {

using koszulkit::Integer;
using IMat = std::vector<std::vector<Integer>>;

inline Integer det(const IMat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    IMat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    Integer term = a[0][c] * det(minor);
    out += c % 2 == 0 ? term : Integer(-term);
  }
  return out;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

/// Invariant factors of an integer matrix from determinantal divisors:
/// d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors.
inline std::vector<Integer> invariant_factors(const IMat& a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs, cs;
    subsets(rows, k, 0, rs, [&](const std::vector<std::size_t>& rsel) {
      std::vector<std::size_t> tmp;
      subsets(cols, k, 0, tmp, [&](const std::vector<std::size_t>& csel) {
        IMat m;
        for (auto r : rsel) {
          std::vector<Integer> row;
          for (auto c : csel) row.push_back(a[r][c]);
          m.push_back(row);
        }
        g = koszulkit::gcd(g, det(m));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// A finite abelian group described by the number of elements killed by k, for each k.
struct TorsionCounts {
  std::vector<std::pair<long, long>> counts;  // (k, #{x : k x = 0})
  bool operator==(const TorsionCounts&) const = default;
};

/// Over Z/m every homology group is finite, so free_rank is 0 (and a nonzero
/// one shows up as a mismatch through the -1 marker).
inline TorsionCounts counts_of(const koszulkit::ModuleInvariant& inv, long m) {
  TorsionCounts t;
  for (long k = 1; k <= m; ++k) {
    if (m % k != 0) continue;
    long n = inv.free_rank == 0 ? 1 : -1;
    for (const auto& d : inv.torsion) n *= static_cast<long>(koszulkit::gcd(Integer(k), koszulkit::numerator_of(d)));
    t.counts.emplace_back(k, n);
  }
  return t;
}

using Vec = std::vector<long>;

inline void all_vectors(std::size_t n, long m, const std::function<void(const Vec&)>& f) {
  Vec v(n, 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == m) v[i++] = 0;
    if (i == n) return;
  }
}

inline Vec apply(const std::vector<std::vector<long>>& a, const Vec& x, long m) {
  Vec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
    y[i] = ((acc % m) + m) % m;
  }
  return y;
}

inline std::vector<std::vector<long>> residues(const koszulkit::Matrix& a, std::size_t rows, std::size_t cols, long m) {
  std::vector<std::vector<long>> out(rows, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer x = koszulkit::numerator_of(a(i, j).value());
      out[i][j] = static_cast<long>(((x % m) + m) % m);
    }
  return out;
}

/// H_i of a complex over Z/m by enumerating cycles and boundaries.
inline TorsionCounts brute_homology(const koszulkit::FreeComplex& t, int i, long m) {
  const std::size_t n = t.rank(i);
  auto d_out = residues(t.d(i), t.rank(i - 1), n, m);
  auto d_in = residues(t.d(i + 1), n, t.rank(i + 1), m);
  std::set<Vec> bounds;
  all_vectors(t.rank(i + 1), m, [&](const Vec& y) { bounds.insert(apply(d_in, y, m)); });
  std::vector<Vec> cycles;
  all_vectors(n, m, [&](const Vec& x) {
    Vec dx = apply(d_out, x, m);
    bool zero = true;
    for (long c : dx) zero = zero && c == 0;
    if (zero) cycles.push_back(x);
  });
  TorsionCounts out;
  for (long k = 1; k <= m; ++k) {
    if (m % k != 0) continue;
    long count = 0;
    for (const auto& z : cycles) {
      Vec kz = z;
      for (auto& c : kz) c = (c * k) % m;
      if (bounds.count(kz)) ++count;
    }
    out.counts.emplace_back(k, count / static_cast<long>(bounds.size()));
  }
  return out;
}

/// |Hom_K(a, b)| in degree 0 over Z/m: chain maps modulo null-homotopic ones,
/// both enumerated outright. Complexes must live in degrees lo..lo+1.
inline long brute_chain_maps_mod_homotopy(const koszulkit::FreeComplex& a, const koszulkit::FreeComplex& b, long m) {
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  struct Slot {
    int degree;
    std::size_t rows, cols;
  };
  std::vector<Slot> slots;
  std::size_t entries = 0;
  for (int i = lo; i <= hi; ++i) {
    slots.push_back({i, b.rank(i), a.rank(i)});
    entries += b.rank(i) * a.rank(i);
  }
  using Maps = std::vector<std::vector<std::vector<long>>>;
  auto unpack = [&](const Vec& v, const std::vector<Slot>& layout) {
    Maps out;
    std::size_t k = 0;
    for (const auto& s : layout) {
      std::vector<std::vector<long>> mat(s.rows, std::vector<long>(s.cols, 0));
      for (auto& row : mat)
        for (auto& x : row) x = v[k++];
      out.push_back(mat);
    }
    return out;
  };
  auto mul = [&](const std::vector<std::vector<long>>& x, const std::vector<std::vector<long>>& y, std::size_t r,
                 std::size_t c) {
    std::vector<std::vector<long>> z(r, std::vector<long>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long acc = 0;
        for (std::size_t k = 0; k < y.size(); ++k) acc += x[i][k] * y[k][j];
        z[i][j] = ((acc % m) + m) % m;
      }
    return z;
  };
  long chain = 0;
  all_vectors(entries, m, [&](const Vec& v) {
    Maps f = unpack(v, slots);
    bool ok = true;
    for (int i = lo + 1; i <= hi + 1 && ok; ++i) {
      // d_b f_i = f_{i-1} d_a
      auto db = residues(b.d(i), b.rank(i - 1), b.rank(i), m);
      auto da = residues(a.d(i), a.rank(i - 1), a.rank(i), m);
      std::vector<std::vector<long>> fi(b.rank(i), std::vector<long>(a.rank(i), 0)),
          fim1(b.rank(i - 1), std::vector<long>(a.rank(i - 1), 0));
      if (i <= hi) fi = f[static_cast<std::size_t>(i - lo)];
      if (i - 1 >= lo) fim1 = f[static_cast<std::size_t>(i - 1 - lo)];
      ok = mul(db, fi, b.rank(i - 1), a.rank(i)) == mul(fim1, da, b.rank(i - 1), a.rank(i));
    }
    if (ok) ++chain;
  });
  // Null-homotopic maps d_b h_i + h_{i-1} d_a with h_i : a_i -> b_{i+1}.
  std::vector<Slot> hslots;
  std::size_t hentries = 0;
  for (int i = lo - 1; i <= hi; ++i) {
    hslots.push_back({i, b.rank(i + 1), a.rank(i)});
    hentries += b.rank(i + 1) * a.rank(i);
  }
  std::set<Vec> null;
  all_vectors(hentries, m, [&](const Vec& v) {
    Maps h = unpack(v, hslots);
    Vec flat;
    for (int i = lo; i <= hi; ++i) {
      auto db = residues(b.d(i + 1), b.rank(i), b.rank(i + 1), m);
      auto da = residues(a.d(i), a.rank(i - 1), a.rank(i), m);
      auto x = mul(db, h[static_cast<std::size_t>(i - lo + 1)], b.rank(i), a.rank(i));
      auto y = mul(h[static_cast<std::size_t>(i - lo)], da, b.rank(i), a.rank(i));
      for (std::size_t r = 0; r < b.rank(i); ++r)
        for (std::size_t c = 0; c < a.rank(i); ++c) flat.push_back((x[r][c] + y[r][c]) % m);
    }
    null.insert(flat);
  });
  return chain / static_cast<long>(null.size());
}

}  // namespace oracle
