#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "entcard/masses.hpp"

// Independent ground-truth engines: central finite differences, exhaustive
// enumeration of draw outcomes, seeded Monte Carlo, and direct evaluators
// for the two sum lemmas the descent corollaries rest on. None of these
// share code with the analytic implementations they check.

namespace entcard {

struct GradCheckResult {
  std::vector<double> analytic;
  std::vector<double> numeric;
  // Largest per-entry |analytic - numeric| relative to the gradient's
  // infinity norm (floored at 1e-12).
  double max_relative_error = 0.0;
  double step_size = 0.0;
};

// Central difference [f(z + h e_k) - f(z - h e_k)] / (2h) per state.
// Requires every z_k > h so perturbed points stay in the non-negative orthant.
std::vector<double> finite_difference_gradient(
    const std::function<double(const MassVector&)>& f, const MassVector& z,
    double h);

GradCheckResult check_gradient(const std::vector<double>& analytic,
                               const std::function<double(const MassVector&)>& f,
                               const MassVector& z, double h);

// True when the gradient's infinity norm stands far enough above the
// central-difference roundoff floor (~machine epsilon * |f| / h) for a 1e-6
// relative comparison to be meaningful. Near-flat points (e.g. almost-uniform
// masses, where the true gradient is ~1e-7) fail: no double-precision finite
// difference can resolve them to that accuracy, so comparison trials should
// redraw such test points rather than measure noise.
bool finite_difference_resolvable(const std::vector<double>& gradient,
                                  double function_value, double h);

// Expected distinct-state count by summing probability * distinct-count over
// all s^m outcome tuples. Enumeration budget s^m <= 10^7; beyond that an
// invalid-input error suggests the Monte Carlo estimator.
double brute_force_expected_cardinality(const MassVector& z, std::uint64_t m);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;  // sample stddev / sqrt(trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Mean distinct-state count over `trials` simulated m-draw experiments.
// Deterministic for a fixed seed. Requires trials >= 100.
MonteCarloEstimate monte_carlo_expected_cardinality(const MassVector& z,
                                                    std::uint64_t m,
                                                    std::uint64_t trials,
                                                    std::uint64_t seed);

// sum_j sum_i a_i ln(a_i / a_j) over the positive entries of a.
// Strictly positive when the positive entries are non-identical, zero when
// identical. Zero entries are excluded (their log ratios are undefined).
double lemma_log_ratio_sum(const std::vector<double>& a);

// Dot product w . x, validated against its preconditions: w non-negative,
// non-uniform, sorted descending; x non-uniform, zero-sum within 1e-12, a
// run of non-negative entries followed by a run of negative entries; equal
// lengths >= 2. Positive under these conditions.
double lemma_dot_product(const std::vector<double>& w,
                         const std::vector<double>& x);

}  // namespace entcard
