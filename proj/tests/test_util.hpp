#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "entcard/masses.hpp"
#include "entcard/rng.hpp"

// Shared generators for the property and acceptance suites.

namespace entcard::testing {

inline MassVector random_masses(std::mt19937_64& rng, std::uint64_t s_min,
                                std::uint64_t s_max, double lo, double hi) {
  const std::uint64_t s = uniform_int(rng, s_min, s_max);
  std::vector<double> values(s);
  for (auto& v : values) v = lo + (hi - lo) * uniform01(rng);
  return MassVector(std::move(values));
}

inline bool is_uniform(const MassVector& z) {
  return std::all_of(z.values().begin(), z.values().end(),
                     [&](double v) { return v == z[0]; });
}

inline MassVector random_non_uniform_masses(std::mt19937_64& rng,
                                            std::uint64_t s_min,
                                            std::uint64_t s_max, double lo,
                                            double hi) {
  MassVector z = random_masses(rng, s_min, s_max, lo, hi);
  while (is_uniform(z)) z = random_masses(rng, s_min, s_max, lo, hi);
  return z;
}

// Step size guaranteeing no state clamps to zero in one step: a tenth of
// the smallest positive mass over the steepest gradient component.
inline double no_clamp_eta(const MassVector& z) {
  const std::vector<double> g = entropy_gradient(z);
  double min_positive = 0.0, max_abs_gradient = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] > 0.0 && (min_positive == 0.0 || z[k] < min_positive)) {
      min_positive = z[k];
    }
    max_abs_gradient = std::max(max_abs_gradient, std::abs(g[k]));
  }
  return 0.1 * min_positive / (max_abs_gradient + 1e-12);
}

inline std::size_t argmin_positive(const MassVector& z) {
  std::size_t best = z.size();
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] > 0.0 && (best == z.size() || z[k] < z[best])) best = k;
  }
  return best;
}

inline std::size_t argmax_mass(const MassVector& z) {
  return static_cast<std::size_t>(
      std::max_element(z.values().begin(), z.values().end()) -
      z.values().begin());
}

}  // namespace entcard::testing
