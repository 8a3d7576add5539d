#include "entcard/masses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entcard {

namespace {

void require_positive_total(const MassVector& z) {
  if (z.total() <= 0.0) {
    throw std::invalid_argument("mass vector must have at least one positive entry");
  }
}

void require_valid_draw_count(std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("draw count m must be >= 1");
  }
  if (m > kMaxDrawCount) {
    throw std::invalid_argument("draw count m exceeds supported maximum " +
                                std::to_string(kMaxDrawCount));
  }
}

// sum_i z_i ln z_i with the 0 ln 0 := 0 convention.
double mass_log_mass_sum(const MassVector& z) {
  double acc = 0.0;
  for (double zi : z.values()) {
    if (zi > 0.0) acc += zi * std::log(zi);
  }
  return acc;
}

}  // namespace

MassVector::MassVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("mass vector must have at least one state");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) {
      throw std::invalid_argument("mass at index " + std::to_string(i) +
                                  " is negative or NaN");
    }
  }
}

double MassVector::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

ProbabilityVector::ProbabilityVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("probability vector must be non-empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || values_[i] > 1.0) {
      throw std::invalid_argument("probability at index " + std::to_string(i) +
                                  " outside [0,1]");
    }
    sum += values_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) +
                                ", expected 1");
  }
}

ProbabilityVector normalize(const MassVector& z) {
  require_positive_total(z);
  const double total = z.total();
  std::vector<double> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = z[i] / total;
  return ProbabilityVector(std::move(p));
}

double entropy(const MassVector& z) {
  require_positive_total(z);
  const double total = z.total();
  double h = 0.0;
  for (double zi : z.values()) {
    if (zi > 0.0) {
      const double p = zi / total;
      h -= p * std::log(p);
    }
  }
  return std::max(h, 0.0);  // one-hot rounds to exactly 0
}

std::vector<double> entropy_gradient(const MassVector& z) {
  require_positive_total(z);
  const double total = z.total();
  const double log_sum = mass_log_mass_sum(z);  // sum_i z_i ln z_i
  const double inv_total_sq = 1.0 / (total * total);
  std::vector<double> g(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] > 0.0) {
      // sum_i z_i ln(z_i / z_k) = (sum_i z_i ln z_i) - total * ln z_k
      g[k] = (log_sum - total * std::log(z[k])) * inv_total_sq;
    }
  }
  return g;
}

std::vector<double> entropy_gradient_alt(const MassVector& z) {
  const ProbabilityVector p = normalize(z);
  const double total = z.total();
  double plogp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) plogp += p[i] * std::log(p[i]);
  }
  std::vector<double> g(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (p[k] > 0.0) {
      g[k] = (plogp - std::log(p[k])) / total;
    }
  }
  return g;
}

std::size_t cardinality(const MassVector& z, double zero_threshold) {
  if (zero_threshold < 0.0) {
    throw std::invalid_argument("zero_threshold must be >= 0");
  }
  return static_cast<std::size_t>(std::count_if(
      z.values().begin(), z.values().end(),
      [zero_threshold](double v) { return v > zero_threshold; }));
}

double complement_power(double p, std::uint64_t m) {
  if (p >= 1.0) return 0.0;
  if (p < 0.5) {
    // (1-p)^m = exp(m log1p(-p)); avoids cancellation in 1-p at large m
    return std::exp(static_cast<double>(m) * std::log1p(-p));
  }
  return std::pow(1.0 - p, static_cast<double>(m));
}

double expected_cardinality(const MassVector& z, std::uint64_t m) {
  require_valid_draw_count(m);
  const ProbabilityVector p = normalize(z);
  double u = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) u += 1.0 - complement_power(p[i], m);
  }
  return u;
}

std::vector<double> expected_cardinality_gradient(const MassVector& z,
                                                  std::uint64_t m) {
  require_valid_draw_count(m);
  const ProbabilityVector p = normalize(z);
  const double total = z.total();
  // sum_i z_i (1-p_i)^(m-1), shared across all k
  double weighted_q = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > 0.0) weighted_q += z[i] * complement_power(p[i], m - 1);
  }
  const double scale = static_cast<double>(m) / (total * total);
  std::vector<double> g(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] > 0.0) {
      g[k] = scale * (total * complement_power(p[k], m - 1) - weighted_q);
    }
  }
  return g;
}

bool mass_decrease_condition(const MassVector& z, std::size_t k) {
  if (k >= z.size()) {
    throw std::invalid_argument("state index " + std::to_string(k) +
                                " out of range");
  }
  require_positive_total(z);
  if (z[k] <= 0.0) {
    throw std::invalid_argument("mass_decrease_condition requires z_k > 0");
  }
  // Same expression as the entropy-gradient numerator, so the sign
  // equivalence with entropy_gradient(z)[k] > 0 holds bit-for-bit.
  const double total = z.total();
  return mass_log_mass_sum(z) - total * std::log(z[k]) > 0.0;
}

std::vector<double> probability_change(const MassVector& z, double eta) {
  require_positive_total(z);
  if (!(eta > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  const std::vector<double> g = entropy_gradient(z);
  const double total = z.total();
  double new_total = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double updated = z[k] - eta * g[k];
    if (z[k] > 0.0 && updated <= 0.0) {
      throw std::invalid_argument("step would clamp state " + std::to_string(k) +
                                  " to zero; probability_change requires an "
                                  "un-clamped step");
    }
    new_total += z[k] > 0.0 ? updated : 0.0;
  }
  const double gradient_sum = std::accumulate(g.begin(), g.end(), 0.0);
  const double c = total * new_total;
  std::vector<double> delta(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    delta[k] = (eta / c) * (z[k] * gradient_sum - total * g[k]);
  }
  return delta;
}

}  // namespace entcard
