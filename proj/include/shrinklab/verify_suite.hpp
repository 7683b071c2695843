#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shrinklab {

struct CheckResult {
  int criterion = 0;
  std::string suite;      // short name accepted by `verify --suite`
  std::string statement;  // the property being checked
  bool pass = false;
  std::string detail;  // counts on success, a witness on failure
  double seconds = 0;
};

// Suite names in criterion order.
const std::vector<std::string>& suite_names();

// Runs one criterion (1..11). Sampled parts derive their streams from seed.
CheckResult run_criterion(int criterion, std::uint64_t seed);

// `all` or one name from suite_names(); throws invalid_argument otherwise.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace shrinklab
