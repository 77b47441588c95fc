#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace koszulkit::selftest {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs one acceptance criterion (1-11).
CriterionResult run(int id, std::uint64_t seed);
/// All criteria in order; `report` sees each result as soon as it is ready.
std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& report = {});

/// "[PASS] 3 generator independence: ..." on one line.
std::string format(const CriterionResult& r);

}  // namespace koszulkit::selftest
