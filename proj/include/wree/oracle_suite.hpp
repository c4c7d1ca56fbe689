#pragma once

#include <string>
#include <vector>

namespace wree {

// One cross-validation check of the reduced path against the dense oracle.
struct OracleCheck {
  std::string name;
  bool passed = false;
  double max_error = 0.0;  // worst observed deviation (signed where noted)
  double tolerance = 0.0;
  std::string detail;
};

// Runs the full dense-vs-reduced agreement suite with fixed seeds.  With
// inject_fault the reduced value of one Kronecker comparison is perturbed
// above tolerance, proving the harness can report a mismatch.
std::vector<OracleCheck> run_oracle_suite(bool inject_fault = false);

}  // namespace wree
