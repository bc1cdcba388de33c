#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcnnvc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  // Deterministic summary (counts, worst deviations); never timings.
  std::string detail;

  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;

  bool passed() const;
  friend bool operator==(const SelftestReport&, const SelftestReport&) = default;
};

inline constexpr int kCriterionCount = 12;

// Runs one acceptance check (1..12). Criterion 12 reruns 1..11 twice and
// compares the serialized reports.
CriterionResult run_criterion(int id, std::uint64_t seed);

SelftestReport run_selftest(std::uint64_t seed);

}  // namespace gcnnvc
