#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ellgas {

/// One named numeric check: pass iff the measured value respects the bound.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

enum class ValidationLevel { fast, full };

std::vector<CheckResult> run_validation(ValidationLevel level, std::uint64_t seed = 2024);

}  // namespace ellgas
