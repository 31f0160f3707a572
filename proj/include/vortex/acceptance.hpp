#pragma once

#include <string>
#include <vector>

namespace vortex {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details; // compact JSON with the measured values and thresholds
};

int criterion_count();

// Runs one acceptance criterion (1-based). Throws ValidationError for unknown ids.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all_criteria();

// Invariant batteries per named fixture (sphere4d, circle3d, flatpatch4d,
// random_vortices, cylinder_fibration, torus_band_sheet, sphere_band_sheet).
struct InvariantResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
};

std::vector<InvariantResult> run_invariants(const std::string& fixture);

} // namespace vortex
