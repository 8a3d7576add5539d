#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "entcard/masses.hpp"

// Clamped gradient descent on entropy over unnormalized masses:
//   z~_k = max(z_k - eta * dH/dz_k, 0)
// plus trajectory recording and the per-step diagnostics used to observe
// finite termination (the smallest state's probability-decrease lower bound
// and the second-smallest / smallest mass ratio).

namespace entcard {

enum class StopMode { cardinality_one, max_steps_only };

enum class TerminationReason { cardinality_one, max_steps, fixed_point };

struct DescentConfig {
  double learning_rate = 0.05;
  std::uint64_t max_steps = 1'000'000;
  // Masses below this snap to exactly 0 after a step. Exact zero is
  // unreachable from above in floating point, so the snap is what makes
  // finite termination observable.
  double zero_snap_tolerance = 1e-9;
  // Draw counts m for which U(z, m) is logged per step.
  std::vector<std::uint64_t> tracked_draw_counts;
  StopMode stop_mode = StopMode::cardinality_one;
  // Record every stride-th step (initial and final always recorded).
  std::uint64_t record_stride = 1;
};

struct StepRecord {
  std::uint64_t t = 0;
  MassVector masses;
  double entropy = 0.0;
  double total_mass = 0.0;
  std::uint64_t cardinality = 0;
  std::map<std::uint64_t, double> expected_cardinalities;
  std::vector<double> gradient;
  // States driven to exactly 0 by the step that produced this record
  // (clamped by max(.,0) or snapped below zero_snap_tolerance).
  std::vector<std::size_t> clamped_indices;
};

struct Trajectory {
  DescentConfig config;
  MassVector initial;
  std::vector<StepRecord> steps;
  TerminationReason termination_reason = TerminationReason::max_steps;
};

struct StepResult {
  MassVector masses;
  std::vector<std::size_t> clamped_indices;
};

// One clamped gradient step. No zero-snapping here; run() applies the snap.
StepResult step(const MassVector& z, double eta);

// Iterate step() from z0 until cardinality reaches 1, the masses stop
// changing (fixed point: uniform or one-hot input), or max_steps.
Trajectory run(const MassVector& z0, const DescentConfig& config);

// Four-factor lower bound on the decrease of the smallest positive state's
// probability in one un-clamped step:
//   (eta/c) (1 - s p_i) (1 - p_i) ln(z_m / z_i)
// with i the smallest positive mass, z_m the second smallest, and
// c = (sum z)(sum z~). Positive for full-support non-uniform z.
double smallest_probability_decrease_bound(const MassVector& z, double eta);

// Second-smallest over smallest positive mass, >= 1. Strictly increases
// across un-clamped descent steps. Throws with < 2 positive masses.
double ratio_diagnostic(const MassVector& z);

struct GradientSumDiagnostics {
  double sum = 0.0;            // sum_k dH/dz_k, > 0 for non-uniform z
  double mean_gradient = 0.0;  // sum / s
  double mean_mass = 0.0;      // (sum_k z_k) / s
};

GradientSumDiagnostics gradient_sum_diagnostics(const MassVector& z);

}  // namespace entcard
