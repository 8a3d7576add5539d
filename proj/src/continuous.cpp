#include "entcard/continuous.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entcard {

namespace {

void require_valid_interval(const IntervalUniform& u) {
  if (!(u.b > u.a)) {
    throw std::invalid_argument("interval needs b > a");
  }
}

std::size_t cloud_dimension(const SampleCloud& cloud) {
  if (cloud.points.empty()) {
    throw std::invalid_argument("sample cloud needs at least one point");
  }
  const std::size_t k = cloud.points.front().size();
  if (k == 0) {
    throw std::invalid_argument("points need at least one dimension");
  }
  for (const auto& point : cloud.points) {
    if (point.size() != k) {
      throw std::invalid_argument("all points must share one dimension");
    }
  }
  return k;
}

std::vector<double> per_dimension_mean(const SampleCloud& cloud, std::size_t k) {
  std::vector<double> mean(k, 0.0);
  for (const auto& point : cloud.points) {
    for (std::size_t d = 0; d < k; ++d) mean[d] += point[d];
  }
  for (double& m : mean) m /= static_cast<double>(cloud.points.size());
  return mean;
}

}  // namespace

double uniform_entropy(const IntervalUniform& u) {
  require_valid_interval(u);
  return std::log(u.b - u.a);
}

std::uint64_t interval_covering_number(const IntervalUniform& u, double eps) {
  require_valid_interval(u);
  if (!(eps > 0.0)) {
    throw std::invalid_argument("eps must be positive");
  }
  const double quotient = (u.b - u.a) / (2.0 * eps);
  // Absorb float fuzz so exact multiples of 2*eps do not round up.
  const auto n = static_cast<std::uint64_t>(std::ceil(quotient - 1e-9));
  return n > 0 ? n : 1;
}

double gaussian_entropy(const DiagonalGaussian& g) {
  if (g.variances.empty()) {
    throw std::invalid_argument("need at least one variance");
  }
  double h = 0.0;
  for (std::size_t i = 0; i < g.variances.size(); ++i) {
    if (!(g.variances[i] > 0.0)) {
      throw std::invalid_argument("variance at dimension " + std::to_string(i) +
                                  " must be positive");
    }
    h += 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * g.variances[i]);
  }
  return h;
}

std::vector<std::vector<double>> variance_gradient(const SampleCloud& cloud) {
  const std::size_t k = cloud_dimension(cloud);
  const std::size_t n = cloud.points.size();
  const std::vector<double> mean = per_dimension_mean(cloud, k);
  std::vector<std::vector<double>> grad(n, std::vector<double>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < k; ++d) {
      grad[i][d] = (2.0 / static_cast<double>(n)) * (cloud.points[i][d] - mean[d]);
    }
  }
  return grad;
}

SampleCloud contract_step(const SampleCloud& cloud, double eta) {
  const std::size_t k = cloud_dimension(cloud);
  const std::size_t n = cloud.points.size();
  if (!(eta > 0.0) || eta >= static_cast<double>(n) / 2.0) {
    throw std::invalid_argument("contract_step needs 0 < eta < n/2");
  }
  const double factor = 1.0 - 2.0 * eta / static_cast<double>(n);
  const std::vector<double> mean = per_dimension_mean(cloud, k);
  SampleCloud out;
  out.points.resize(n, std::vector<double>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < k; ++d) {
      out.points[i][d] = mean[d] + factor * (cloud.points[i][d] - mean[d]);
    }
  }
  return out;
}

std::vector<RangeStep> uniform_range_descent(const IntervalUniform& u,
                                             double eta, double eps,
                                             std::uint64_t max_steps) {
  require_valid_interval(u);
  if (!(eta > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("eta and eps must be positive");
  }
  auto snapshot = [eps](double a, double b) {
    return RangeStep{a, b, std::log(b - a),
                     interval_covering_number({a, b}, eps)};
  };
  std::vector<RangeStep> trace;
  double a = u.a, b = u.b;
  trace.push_back(snapshot(a, b));
  for (std::uint64_t t = 0;
       t < max_steps && trace.back().covering_number > 1; ++t) {
    const double shrink = eta / (b - a);
    double na = a + shrink;
    double nb = b - shrink;
    if (!(nb > na)) {
      // The step would overshoot past collapse; land on the stopping-width
      // interval around the midpoint instead. Strictly narrower than the
      // current interval, since its covering number is still above 1.
      const double mid = 0.5 * (a + b);
      na = mid - eps;
      nb = mid + eps;
    }
    a = na;
    b = nb;
    trace.push_back(snapshot(a, b));
  }
  return trace;
}

}  // namespace entcard
