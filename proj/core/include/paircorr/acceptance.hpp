#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace paircorr::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  std::uint32_t prime_cutoff = 1'000'000;
  std::vector<int> criteria; // empty = all of 1..15
};

/// Runs the acceptance criteria and returns one result per criterion.
std::vector<CriterionResult> run(const Options& options = {});

/// Criterion ids behind a named suite; throws ValidationError for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace paircorr::acceptance
