#pragma once

// The numbered end-to-end checks. Each one recomputes its expected values
// from an independent route (counting oracle, enumeration, literal tables)
// and never consults a stored answer.

#include <string>
#include <string_view>
#include <vector>

namespace qflab::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;              // one line
  std::vector<std::string> detail;  // failures and diagnostics
  double seconds = 0;
};

struct CriterionInfo {
  int id;
  std::string_view name;
  std::string_view description;
};

const std::vector<CriterionInfo>& criteria();

/// Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id);

/// "all", a criterion name or its number. Throws std::invalid_argument for
/// unknown suites.
std::vector<CriterionResult> run_suite(std::string_view suite);

}  // namespace qflab::acceptance
