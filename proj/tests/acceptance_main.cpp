// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include "vortex/acceptance.hpp"
#include "vortex/version.hpp"

#include <chrono>
#include <cstdio>

int main() {
  std::printf("vortexkit %s acceptance suite\n", vortex::kVersion);
  bool all_pass = true;
  for (int id = 1; id <= vortex::criterion_count(); ++id) {
    const auto start = std::chrono::steady_clock::now();
    vortex::CriterionResult r;
    try {
      r = vortex::run_criterion(id);
    } catch (const std::exception& ex) {
      r.id = id;
      r.name = "criterion crashed";
      r.pass = false;
      r.details = std::string("{\"error\":\"") + ex.what() + "\"}";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-68s (%5.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                secs);
    std::printf("        %s\n", r.details.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all_pass ? 0 : 1;
}
