#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Batch verification harness: runs every documented invariant of the mass,
// descent, oracle, and continuous operations against seeded random inputs
// and reports pass/fail with a counterexample witness on failure.

namespace entcard {

struct InvariantReport {
  std::string check_name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::string first_counterexample;  // empty when failures == 0

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 42;
  // Self-test: feed the sign-flipped entropy gradient into the gradient-sign
  // checks, which must then fail with a counterexample. Proves the harness
  // can catch a broken gradient rather than passing vacuously.
  bool mutate_gradient_sign = false;
};

std::vector<InvariantReport> verify_corollaries(const VerifyOptions& options);

}  // namespace entcard
