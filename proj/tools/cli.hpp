#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gcnnvc/bounds.hpp"

namespace gcnnvc::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;  // bounds, shatter, lift-check, invariance, selftest, replay
  std::optional<std::string> spec_path;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  std::optional<std::string> out_path;
  std::size_t trials = 100;
  bool timestamp = true;
  std::optional<SandwichConstants> constants;

  // shatter
  std::optional<std::string> group;
  std::size_t blocks = 1;
  std::optional<std::string> instance_path;
  std::optional<std::string> emit_instance_path;

  // replay
  std::optional<std::string> report_path;
};

// Executes one command. The report goes to `out` (or --out) in one piece only
// after everything succeeded; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcnnvc::cli
