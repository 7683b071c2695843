// One PASS/FAIL line per acceptance criterion. Tolerances and thresholds
// live next to the checks (kShrinkageRatioThreshold, kEntropyTolerance).

#include <cstdio>

#include "shrinklab/verify_suite.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;

}  // namespace

int main() {
  bool all = true;
  for (int c = 1; c <= static_cast<int>(shrinklab::suite_names().size()); ++c) {
    const shrinklab::CheckResult r = shrinklab::run_criterion(c, kSeed);
    std::printf("criterion %2d %s  %-14s %s  [%s] (%.1fs)\n", c, r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                r.statement.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
