#pragma once

#include "koszulkit/complex.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace koszulkit {

using Rng = std::mt19937_64;

/// Elementary summand of a randomized complex: the unit in `degree`, or
/// R --order--> R in degrees degree + 1, degree.
struct Piece {
  enum class Kind { Unit, Cone };
  Kind kind = Kind::Unit;
  int degree = 0;
  Element order;
};

/// Direct sum of the pieces (ordered as given).
FreeComplex assemble(const Ring& ring, const std::vector<Piece>& pieces);

/// Invertible matrix built from elementary operations, with its inverse.
std::pair<Matrix, Matrix> random_unimodular(const Ring& ring, std::size_t n, Rng& rng, int bound = 3);

/// t conjugated by random unimodular changes of basis in every degree.
FreeComplex scramble(const FreeComplex& t, Rng& rng);

/// Uniform integer in [lo, hi].
long long uniform(Rng& rng, long long lo, long long hi);

/// Replay text for a randomized instance.
std::string describe(const Ring& ring, const std::vector<Piece>& pieces);

}  // namespace koszulkit
