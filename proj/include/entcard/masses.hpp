#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Core types and pure functions for unnormalized probability masses:
// entropy, cardinality, expected cardinality over m draws, and their
// analytic gradients with respect to each mass.
//
// All entropies are in nats (natural log). Divide by ln 2 for bits.

namespace entcard {

// Maximum supported draw count for expected-cardinality computations.
inline constexpr std::uint64_t kMaxDrawCount = 1'000'000;

// Unnormalized non-negative masses of a discrete variable with s >= 1 states.
class MassVector {
 public:
  MassVector() = default;
  // Throws std::invalid_argument if empty or any entry is negative.
  explicit MassVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Sum of all masses.
  double total() const;

  bool operator==(const MassVector& other) const = default;

 private:
  std::vector<double> values_;
};

// Normalized probabilities p_i = z_i / sum(z); entries sum to 1 within 1e-12
// and keep the source MassVector's state order.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;
  // Throws std::invalid_argument if entries leave [0,1] or do not sum to 1.
  explicit ProbabilityVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// p_i = z_i / sum(z). Throws on an all-zero mass vector.
ProbabilityVector normalize(const MassVector& z);

// Shannon entropy of the normalized distribution, in nats, computed directly
// from the masses. Terms with z_i = 0 contribute 0 (0 log 0 := 0).
// Range [0, ln s]. Throws on an all-zero mass vector.
double entropy(const MassVector& z);

// dH/dz_k = (1 / (sum z)^2) * sum_i z_i ln(z_i / z_k) for z_k > 0.
// States with z_k = 0 get gradient 0: they are clamped at zero under the
// non-negativity constraint, so the descent dynamics never move them.
std::vector<double> entropy_gradient(const MassVector& z);

// Same gradient through the normalized-probability form,
// dH/dz_k = (1 / sum z) * sum_i p_i ln(p_i / p_k).
// Agrees with entropy_gradient to high precision; kept as an independent
// algebraic route for consistency checks.
std::vector<double> entropy_gradient_alt(const MassVector& z);

// Count of states with mass strictly greater than zero_threshold.
std::size_t cardinality(const MassVector& z, double zero_threshold);

// U(z, m) = sum_i [1 - (1 - p_i)^m]: expected number of distinct states
// observed in m independent draws. Always in [1, min(m, cardinality)].
// Throws if m = 0, m > kMaxDrawCount, or the masses are all zero.
double expected_cardinality(const MassVector& z, std::uint64_t m);

// dU/dz_k = (m / (sum z)^2) * sum_i z_i [(1-p_k)^(m-1) - (1-p_i)^(m-1)].
// Zero-mass states get gradient 0 (clamped, as for entropy_gradient).
std::vector<double> expected_cardinality_gradient(const MassVector& z,
                                                  std::uint64_t m);

// True iff dH/dz_k > 0, i.e. state k's mass decreases under an entropy
// descent step. Equivalent condition: ln z_k is below the mass-weighted
// average of all log masses. Requires z_k > 0; throws on out-of-range k.
bool mass_decrease_condition(const MassVector& z, std::size_t k);

// Per-state probability change p~ - p after one un-clamped descent step of
// rate eta, from the closed form with shared constant c = (sum z)(sum z~).
// Entries sum to 0 within 1e-12. Throws if the step would clamp a positive
// mass to zero; the message names the first clamped index.
std::vector<double> probability_change(const MassVector& z, double eta);

// (1 - p)^m, stable for small p and large m.
double complement_power(double p, std::uint64_t m);

}  // namespace entcard
