#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bandspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every acceptance criterion; all randomness derives from `seed`.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

std::string format_result(const CriterionResult& r);

}  // namespace bandspec
