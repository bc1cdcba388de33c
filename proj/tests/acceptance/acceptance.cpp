// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <exception>
#include <string>

#include "gcnnvc/selftest.hpp"

int main() {
  constexpr std::uint64_t kSeed = 20240601;
  int failed = 0;
  for (int id = 1; id <= gcnnvc::kCriterionCount; ++id) {
    gcnnvc::CriterionResult c;
    try {
      c = gcnnvc::run_criterion(id, kSeed);
    } catch (const std::exception& e) {
      c = {id, "criterion " + std::to_string(id), false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %2d [%s] %s: %s\n", id, c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    failed += c.passed ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", gcnnvc::kCriterionCount - failed, gcnnvc::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
