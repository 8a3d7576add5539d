#pragma once

#include <cstdint>
#include <vector>

// Continuous-variable counterparts of the discrete machinery: interval
// uniform and diagonal Gaussian differential entropies (nats), epsilon
// covering numbers on intervals, and empirical-variance contraction of a
// sample cloud toward its mean.

namespace entcard {

// Uniform distribution on [a, b], b > a.
struct IntervalUniform {
  double a = 0.0;
  double b = 1.0;
};

// Independent multivariate Gaussian, one positive variance per dimension.
struct DiagonalGaussian {
  std::vector<double> variances;
};

// n points of dimension k each.
struct SampleCloud {
  std::vector<std::vector<double>> points;
};

// ln(b - a); negative for widths below 1. Throws if b <= a.
double uniform_entropy(const IntervalUniform& u);

// Minimum number of covering points for [a, b] under |.| with radius eps:
// ceil((b - a) / (2 eps)), at least 1. Centers may lie anywhere on the line.
std::uint64_t interval_covering_number(const IntervalUniform& u, double eps);

// (1/2) sum_i ln(2 pi e var_i). Throws on non-positive variances.
double gaussian_entropy(const DiagonalGaussian& g);

// Gradient of each dimension's empirical variance (1/n) sum (x_i - mean)^2
// with respect to every point's coordinate: (2/n)(x_k - mean). Per
// dimension the gradients sum to 0 over points.
std::vector<std::vector<double>> variance_gradient(const SampleCloud& cloud);

// One variance-descent step: x_k <- mean + (1 - 2 eta / n)(x_k - mean) per
// dimension. Preserves the mean and scales each dimension's variance by
// (1 - 2 eta / n)^2. Requires 0 < eta < n/2 so the factor stays in (0, 1).
SampleCloud contract_step(const SampleCloud& cloud, double eta);

struct RangeStep {
  double a = 0.0;
  double b = 0.0;
  double entropy = 0.0;
  std::uint64_t covering_number = 0;
};

// Symmetric gradient descent on ln(b - a) over the endpoints:
// a <- a + eta/(b-a), b <- b - eta/(b-a) each step, until the covering
// number reaches 1 (b - a <= 2 eps) or max_steps. First element records the
// input range.
std::vector<RangeStep> uniform_range_descent(const IntervalUniform& u,
                                             double eta, double eps,
                                             std::uint64_t max_steps);

}  // namespace entcard
