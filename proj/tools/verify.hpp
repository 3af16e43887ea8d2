#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mwk::cli {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  bool passed = true;
  double worst = 0.0;  // largest observed violation metric (check-specific)
  std::string detail;  // first failing case, if any
};

struct VerifyOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 20240601;
  // Name of a check whose computation is deliberately corrupted so the
  // harness can confirm that failures are reported. Empty = none.
  std::string inject_fault;
};

const std::vector<std::string>& verification_check_names();

/// Runs every randomised identity/bound check on `trials` instances each.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace mwk::cli
