#include "entcard/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "entcard/rng.hpp"

namespace entcard {

namespace {

ProbabilityVector sample_simplex_with(std::mt19937_64& rng, std::uint64_t s) {
  std::vector<double> draws(s);
  double total = 0.0;
  for (auto& d : draws) {
    d = -std::log(uniform01_open(rng));
    total += d;
  }
  for (auto& d : draws) d /= total;
  return ProbabilityVector(std::move(draws));
}

ExperimentRecord make_record(const ProbabilityVector& p, std::uint64_t m,
                             std::uint64_t seed) {
  const MassVector z(p.values());
  ExperimentRecord rec;
  rec.s = p.size();
  rec.m = m;
  rec.probabilities = p;
  rec.entropy = entropy(z);
  rec.expected_cardinality = m > 0 ? expected_cardinality(z, m) : 0.0;
  rec.nonzero_count = cardinality(z, 0.0);
  rec.seed = seed;
  return rec;
}

}  // namespace

ProbabilityVector sample_simplex(std::uint64_t s, std::uint64_t seed) {
  if (s < 2) {
    throw std::invalid_argument("simplex sampling needs s >= 2");
  }
  std::mt19937_64 rng(seed);
  return sample_simplex_with(rng, s);
}

std::vector<ExperimentRecord> figure1_data(std::uint64_t n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("need n >= 1 records");
  }
  std::vector<ExperimentRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t record_seed = derive_seed(seed, i);
    records.push_back(make_record(sample_simplex(3, record_seed), 0, record_seed));
  }
  return records;
}

std::vector<ExperimentRecord> figure2_data(std::uint64_t n, std::uint64_t s_min,
                                           std::uint64_t s_max,
                                           std::uint64_t m_min,
                                           std::uint64_t m_max,
                                           std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("need n >= 1 records");
  }
  if (s_min < 2 || s_min > s_max || m_min < 2 || m_min > m_max) {
    throw std::invalid_argument("need 2 <= s_min <= s_max and 2 <= m_min <= m_max");
  }
  std::vector<ExperimentRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t record_seed = derive_seed(seed, i);
    std::mt19937_64 rng(record_seed);
    const std::uint64_t s = uniform_int(rng, s_min, s_max);
    const std::uint64_t m = uniform_int(rng, m_min, m_max);
    records.push_back(make_record(sample_simplex_with(rng, s), m, record_seed));
  }
  return records;
}

std::vector<ExperimentRecord> figure3_data(std::uint64_t n, std::uint64_t m_min,
                                           std::uint64_t m_max,
                                           std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("need n >= 1 records");
  }
  if (m_min < 2 || m_min > m_max) {
    throw std::invalid_argument("need 2 <= m_min <= m_max");
  }
  constexpr std::uint64_t bucket_count = std::size(kFigure3StateCounts);
  std::vector<ExperimentRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t record_seed = derive_seed(seed, i);
    std::mt19937_64 rng(record_seed);
    const std::uint64_t s =
        kFigure3StateCounts[uniform_int(rng, 0, bucket_count - 1)];
    const std::uint64_t m = uniform_int(rng, m_min, m_max);
    records.push_back(make_record(sample_simplex_with(rng, s), m, record_seed));
  }
  return records;
}

}  // namespace entcard
