#include "entcard/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entcard {

namespace {

StepRecord make_record(std::uint64_t t, const MassVector& z,
                       const DescentConfig& config,
                       std::vector<std::size_t> clamped) {
  StepRecord rec;
  rec.t = t;
  rec.masses = z;
  rec.entropy = entropy(z);
  rec.total_mass = z.total();
  rec.cardinality = cardinality(z, 0.0);
  rec.gradient = entropy_gradient(z);
  for (std::uint64_t m : config.tracked_draw_counts) {
    rec.expected_cardinalities[m] = expected_cardinality(z, m);
  }
  rec.clamped_indices = std::move(clamped);
  return rec;
}

// Indices of the smallest and second-smallest positive masses.
// Throws unless at least 2 masses are positive.
std::pair<std::size_t, std::size_t> two_smallest_positive(const MassVector& z) {
  std::size_t i_min = z.size(), i_second = z.size();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] <= 0.0) continue;
    if (i_min == z.size() || z[i] < z[i_min]) {
      i_second = i_min;
      i_min = i;
    } else if (i_second == z.size() || z[i] < z[i_second]) {
      i_second = i;
    }
  }
  if (i_second == z.size()) {
    throw std::invalid_argument("need at least 2 positive masses");
  }
  return {i_min, i_second};
}

}  // namespace

StepResult step(const MassVector& z, double eta) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  const std::vector<double> g = entropy_gradient(z);
  std::vector<double> updated(z.size());
  std::vector<std::size_t> clamped;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] <= 0.0) {
      updated[k] = 0.0;  // zero masses stick to zero
      continue;
    }
    updated[k] = std::max(z[k] - eta * g[k], 0.0);
    if (updated[k] == 0.0) clamped.push_back(k);
  }
  return {MassVector(std::move(updated)), std::move(clamped)};
}

Trajectory run(const MassVector& z0, const DescentConfig& config) {
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (config.zero_snap_tolerance < 0.0) {
    throw std::invalid_argument("zero_snap_tolerance must be >= 0");
  }
  const std::uint64_t stride = std::max<std::uint64_t>(config.record_stride, 1);

  Trajectory traj;
  traj.config = config;
  traj.initial = z0;
  traj.steps.push_back(make_record(0, z0, config, {}));

  if (config.stop_mode == StopMode::cardinality_one &&
      cardinality(z0, config.zero_snap_tolerance) <= 1) {
    traj.termination_reason = TerminationReason::cardinality_one;
    return traj;
  }

  MassVector z = z0;
  traj.termination_reason = TerminationReason::max_steps;
  for (std::uint64_t t = 1; t <= config.max_steps; ++t) {
    auto [next, clamped] = step(z, config.learning_rate);
    std::vector<double> snapped = next.values();
    for (std::size_t k = 0; k < snapped.size(); ++k) {
      if (snapped[k] > 0.0 && snapped[k] < config.zero_snap_tolerance) {
        snapped[k] = 0.0;
        clamped.push_back(k);
      }
    }
    std::sort(clamped.begin(), clamped.end());
    MassVector stepped(std::move(snapped));
    if (stepped == z) {
      traj.termination_reason = TerminationReason::fixed_point;
      break;
    }
    z = std::move(stepped);
    const bool done =
        (config.stop_mode == StopMode::cardinality_one && cardinality(z, 0.0) <= 1);
    if (t % stride == 0 || done || t == config.max_steps) {
      traj.steps.push_back(make_record(t, z, config, std::move(clamped)));
    }
    if (done) {
      traj.termination_reason = TerminationReason::cardinality_one;
      break;
    }
  }
  return traj;
}

double smallest_probability_decrease_bound(const MassVector& z, double eta) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  auto [i_min, i_second] = two_smallest_positive(z);
  if (z[i_min] == z[i_second]) {
    // Uniform support has zero gradient everywhere; the bound degenerates.
    bool uniform = true;
    const double ref = z[i_min];
    for (double v : z.values()) {
      if (v > 0.0 && v != ref) { uniform = false; break; }
    }
    if (uniform) {
      throw std::invalid_argument("bound requires non-uniform positive masses");
    }
  }
  const StepResult next = step(z, eta);
  if (!next.clamped_indices.empty()) {
    throw std::invalid_argument(
        "bound requires an un-clamped step; state " +
        std::to_string(next.clamped_indices.front()) + " would clamp to zero");
  }
  const double total = z.total();
  const double new_total = next.masses.total();
  const double c = total * new_total;
  const double p_min = z[i_min] / total;
  const double s = static_cast<double>(z.size());
  return (eta / c) * (1.0 - s * p_min) * (1.0 - p_min) *
         std::log(z[i_second] / z[i_min]);
}

double ratio_diagnostic(const MassVector& z) {
  auto [i_min, i_second] = two_smallest_positive(z);
  return z[i_second] / z[i_min];
}

GradientSumDiagnostics gradient_sum_diagnostics(const MassVector& z) {
  const std::vector<double> g = entropy_gradient(z);
  GradientSumDiagnostics d;
  d.sum = std::accumulate(g.begin(), g.end(), 0.0);
  d.mean_gradient = d.sum / static_cast<double>(z.size());
  d.mean_mass = z.total() / static_cast<double>(z.size());
  return d;
}

}  // namespace entcard
