#pragma once

#include <cstdint>
#include <vector>

#include "entcard/masses.hpp"

// Seeded sampling of random distributions and the record generators behind
// the entropy / expected-cardinality scatter data. Every record carries its
// own derived seed, so any single record can be regenerated in isolation.

namespace entcard {

struct ExperimentRecord {
  std::uint64_t s = 0;  // number of states
  std::uint64_t m = 0;  // draw count; 0 when unused
  ProbabilityVector probabilities;
  double entropy = 0.0;
  double expected_cardinality = 0.0;  // meaningful only when m > 0
  std::uint64_t nonzero_count = 0;
  std::uint64_t seed = 0;
};

// Uniform sample from the (s-1)-simplex via normalized unit exponentials
// (flat Dirichlet). Deterministic for a fixed seed. Requires s >= 2.
ProbabilityVector sample_simplex(std::uint64_t s, std::uint64_t seed);

// n random 3-state distributions with their entropies (m unused).
std::vector<ExperimentRecord> figure1_data(std::uint64_t n, std::uint64_t seed);

// n records with s and m drawn independently and uniformly from the given
// integer ranges, each with entropy and U(p, m).
std::vector<ExperimentRecord> figure2_data(std::uint64_t n, std::uint64_t s_min,
                                           std::uint64_t s_max,
                                           std::uint64_t m_min,
                                           std::uint64_t m_max,
                                           std::uint64_t seed);

// Like figure2_data but s is drawn from the fixed bucket set
// {2, 5, 10, 25, 50, 100}.
std::vector<ExperimentRecord> figure3_data(std::uint64_t n, std::uint64_t m_min,
                                           std::uint64_t m_max,
                                           std::uint64_t seed);

inline constexpr std::uint64_t kFigure3StateCounts[] = {2, 5, 10, 25, 50, 100};

}  // namespace entcard
