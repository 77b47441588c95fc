#include "doctest.h"
#include "oracles.hpp"

#include "koszulkit/random.hpp"
#include "koszulkit/snf.hpp"

using namespace koszulkit;

namespace {

RMat random_integer_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  RMat a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = Rational(uniform(rng, -bound, bound));
  return a;
}

bool is_identity(const RMat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_SUITE("snf") {

TEST_CASE("invariant factors match determinantal divisors over Z") {
  Rng rng(7);
  const Pid pid = Pid::integers();
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 4)), c = static_cast<std::size_t>(uniform(rng, 1, 4));
    RMat a = random_integer_matrix(rng, r, c, trial % 3 == 0 ? 40 : 6);
    oracle::IMat ia(r, std::vector<Integer>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) ia[i][j] = numerator_of(a(i, j));
    std::vector<Integer> expected = oracle::invariant_factors(ia, c);
    std::vector<Integer> got;
    for (const auto& d : invariant_factors(pid, a))
      if (d != 0) got.push_back(abs_value(numerator_of(d)));
    CHECK(got == expected);
  }
}

TEST_CASE("transforms are unimodular and diagonalize") {
  Rng rng(11);
  for (const Pid& pid : {Pid::integers(), Pid::localized(5), Pid::prime_field(7), Pid::rationals()}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 5)), c = static_cast<std::size_t>(uniform(rng, 1, 5));
      RMat a = random_integer_matrix(rng, r, c, 30);
      if (pid.kind() == PidKind::LocalizedAtPrime)
        for (std::size_t i = 0; i < r; ++i) a(i, 0) = a(i, 0) / Rational(uniform(rng, 1, 4));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a(i, j) = pid.canonical(a(i, j));
      SmithForm s = smith_form(pid, a);
      CHECK(multiply(pid, multiply(pid, s.u, a), s.v) == s.d);
      CHECK(is_identity(multiply(pid, s.u, s.u_inv)));
      CHECK(is_identity(multiply(pid, s.v, s.v_inv)));
      auto diag = s.diagonal();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j) CHECK(s.d(i, j) == 0);
      for (std::size_t k = 0; k + 1 < diag.size(); ++k)
        if (diag[k + 1] != 0) CHECK(pid.divides(diag[k], diag[k + 1]));
      for (std::size_t k = 0; k < diag.size(); ++k) CHECK((diag[k] != 0) == (k < s.rank));
    }
  }
}

TEST_CASE("kernel basis and solve") {
  Rng rng(13);
  const Pid pid = Pid::integers();
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 4)), c = static_cast<std::size_t>(uniform(rng, 1, 5));
    RMat a = random_integer_matrix(rng, r, c, 9);
    RMat k = kernel_basis(pid, a);
    SmithForm s = smith_form(pid, a);
    CHECK(k.cols() == c - s.rank);
    RMat ak = multiply(pid, a, k);
    for (std::size_t i = 0; i < ak.rows(); ++i)
      for (std::size_t j = 0; j < ak.cols(); ++j) CHECK(ak(i, j) == 0);

    std::vector<Rational> x0(c), b(r, 0), x;
    for (auto& v : x0) v = Rational(uniform(rng, -5, 5));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b[i] += a(i, j) * x0[j];
    REQUIRE(solve(pid, a, b, &x));
    for (std::size_t i = 0; i < r; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < c; ++j) acc += a(i, j) * x[j];
      CHECK(acc == b[i]);
    }
    for (const auto& v : x) CHECK(is_integral(v));
  }
}

TEST_CASE("solve rejects targets outside the lattice") {
  RMat a(1, 1);
  a(0, 0) = 4;
  CHECK_FALSE(solve(Pid::integers(), a, {Rational(2)}));
  CHECK(solve(Pid::rationals(), a, {Rational(2)}));
  CHECK(solve(Pid::localized(5), a, {Rational(2)}));
  CHECK_FALSE(solve(Pid::localized(2), a, {Rational(2)}));
}

TEST_CASE("large entries stay tractable") {
  RMat a(3, 3);
  long v[3][3] = {{11, 10, 12}, {30, 0, 0}, {0, 30, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = v[i][j];
  auto d = invariant_factors(Pid::integers(), a);
  oracle::IMat ia{{11, 10, 12}, {30, 0, 0}, {0, 30, 0}};
  auto e = oracle::invariant_factors(ia, 3);
  REQUIRE(d.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(abs_value(numerator_of(d[k])) == e[k]);
}

}
