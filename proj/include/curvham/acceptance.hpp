#pragma once

#include <string>
#include <vector>

namespace curvham::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst measured quantity
  double threshold = 0.0;  // its limit
  std::string detail;
  double seconds = 0.0;
};

/// All criterion ids, ascending.
std::vector<int> all_criteria();

/// Criterion ids of a named suite: curvature, gauge, identity, spectra,
/// convergence.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id);

std::string format_line(const CriterionResult& r);

}  // namespace curvham::acceptance
