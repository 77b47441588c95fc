// Acceptance gate: one pass/fail line per criterion.
#include "koszulkit/selftest.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
  int failed = 0;
  double total = 0;
  koszulkit::selftest::run_all(seed, [&](const koszulkit::selftest::CriterionResult& r) {
    std::printf("%s (%.2fs)\n", koszulkit::selftest::format(r).c_str(), r.seconds);
    std::fflush(stdout);
    total += r.seconds;
    if (!r.pass) ++failed;
  });
  std::printf("%d/11 criteria passed in %.2fs\n", 11 - failed, total);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
