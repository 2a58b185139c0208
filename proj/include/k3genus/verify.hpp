#pragma once

#include <string>
#include <vector>

#include "k3genus/narain.hpp"

namespace k3genus {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Sample torus data used by the verification suite (all exact rationals).
TorusSpec sample_torus_d1_cubic();
TorusSpec sample_torus_d1_bfield();
TorusSpec sample_torus_d1_skew_basis();
TorusSpec sample_torus_d2_cubic();
TorusSpec sample_torus_d2_scaled();
TorusSpec sample_torus_d2_bfield();

// The full verification suite; one entry per criterion, in order. Criteria
// never throw out of here: failures are captured in the result entries.
std::vector<CriterionResult> run_acceptance_suite();

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace k3genus
