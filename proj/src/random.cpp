#include "koszulkit/random.hpp"

namespace koszulkit {

long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

FreeComplex assemble(const Ring& ring, const std::vector<Piece>& pieces) {
  FreeComplex out = FreeComplex::zero(ring);
  for (const auto& p : pieces) {
    FreeComplex c = p.kind == Piece::Kind::Unit ? FreeComplex::unit(ring) : FreeComplex::two_term(ring, p.order);
    out = direct_sum(out, shift(c, p.degree));
  }
  return out;
}

std::pair<Matrix, Matrix> random_unimodular(const Ring& ring, std::size_t n, Rng& rng, int bound) {
  Matrix g = identity_matrix(ring, n), g_inv = identity_matrix(ring, n);
  if (n < 2) return {g, g_inv};
  int steps = static_cast<int>(2 * n);
  for (int k = 0; k < steps; ++k) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(n) - 2));
    if (j >= i) ++j;
    Element c = ring.from_integer(uniform(rng, -bound, bound));
    // Row operation r_i += c r_j on g; its inverse acts on columns of g_inv.
    for (std::size_t col = 0; col < n; ++col) g(i, col) = ring.add(g(i, col), ring.mul(c, g(j, col)));
    for (std::size_t row = 0; row < n; ++row) g_inv(row, j) = ring.sub(g_inv(row, j), ring.mul(g_inv(row, i), c));
  }
  return {g, g_inv};
}

FreeComplex scramble(const FreeComplex& t, Rng& rng) {
  FreeComplex out = t;
  for (int i = t.lo(); i <= t.hi(); ++i) {
    auto [g, g_inv] = random_unimodular(t.ring(), t.rank(i), rng);
    out = change_basis(out, i, g, g_inv);
  }
  return out;
}

std::string describe(const Ring& ring, const std::vector<Piece>& pieces) {
  std::string out = ring.display_name() + ":";
  for (const auto& p : pieces) {
    if (p.kind == Piece::Kind::Unit) out += " R[" + std::to_string(p.degree) + "]";
    else out += " cone(" + ring.render_text(p.order) + ")[" + std::to_string(p.degree) + "]";
  }
  return out;
}

}  // namespace koszulkit
