#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spintomo {

struct SelftestOptions {
  int n_azimuth = 8;
  int n_polar = 8;
  /// Use a 4x4 grid below the exactness minimum; grid-dependent criteria must fail.
  bool force_coarse = false;
  std::uint64_t seed = 20240601;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;  // wall clock, not part of the formatted line
};

struct SelftestSummary {
  std::vector<CriterionResult> results;
  nlohmann::json reports;  // machine-readable side reports (capability, kernel discrepancy)
  double total_seconds = 0.0;

  bool all_passed() const;
};

/// Runs the twelve acceptance criteria in order.
SelftestSummary run_selftest(const SelftestOptions& options);

/// "[PASS] C01 <name>: <detail>"
std::string format_line(const CriterionResult& r);

}  // namespace spintomo
