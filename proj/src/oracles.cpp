#include "entcard/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entcard/rng.hpp"

namespace entcard {

std::vector<double> finite_difference_gradient(
    const std::function<double(const MassVector&)>& f, const MassVector& z,
    double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step h must be positive");
  }
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] <= h) {
      throw std::invalid_argument(
          "central differences need z_k > h at every state; violated at index " +
          std::to_string(k));
    }
  }
  std::vector<double> g(z.size());
  std::vector<double> perturbed = z.values();
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double original = perturbed[k];
    perturbed[k] = original + h;
    const double upper = f(MassVector(perturbed));
    perturbed[k] = original - h;
    const double lower = f(MassVector(perturbed));
    perturbed[k] = original;
    g[k] = (upper - lower) / (2.0 * h);
  }
  return g;
}

GradCheckResult check_gradient(const std::vector<double>& analytic,
                               const std::function<double(const MassVector&)>& f,
                               const MassVector& z, double h) {
  GradCheckResult result;
  result.analytic = analytic;
  result.numeric = finite_difference_gradient(f, z, h);
  result.step_size = h;
  // Errors are measured against the gradient's infinity norm: individual
  // components pass through zero (e.g. at the decrease-condition threshold),
  // where a per-component denominator would amplify finite-difference noise.
  double scale = 1e-12;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    scale = std::max({scale, std::abs(analytic[k]), std::abs(result.numeric[k])});
  }
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    result.max_relative_error =
        std::max(result.max_relative_error,
                 std::abs(analytic[k] - result.numeric[k]) / scale);
  }
  return result;
}

bool finite_difference_resolvable(const std::vector<double>& gradient,
                                  double function_value, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("step size h must be positive");
  }
  double norm = 0.0;
  for (double g : gradient) norm = std::max(norm, std::abs(g));
  // Roundoff in [f(z+h) - f(z-h)] / 2h is a few ulps of f over h; demand the
  // gradient exceed that floor by the 1e6 headroom a 1e-6 check needs.
  const double floor = 10.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(function_value)) / h;
  return norm >= 1e6 * floor;
}

double brute_force_expected_cardinality(const MassVector& z, std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("draw count m must be >= 1");
  }
  const std::size_t s = z.size();
  double budget = 1.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    budget *= static_cast<double>(s);
    if (budget > 1e7) {
      throw std::invalid_argument(
          "enumeration budget s^m <= 10^7 exceeded; use the Monte Carlo "
          "estimator instead");
    }
  }
  // Sort probabilities descending so high-mass tuples accumulate first;
  // distinct counts are label-invariant.
  std::vector<double> p = normalize(z).values();
  std::sort(p.begin(), p.end(), std::greater<double>());

  std::vector<std::size_t> tuple(m, 0);  // odometer over state indices
  long double expectation = 0.0L;
  std::vector<bool> seen(s);
  while (true) {
    long double prob = 1.0L;
    std::fill(seen.begin(), seen.end(), false);
    std::size_t distinct = 0;
    for (std::size_t d = 0; d < m; ++d) {
      prob *= p[tuple[d]];
      if (!seen[tuple[d]]) {
        seen[tuple[d]] = true;
        ++distinct;
      }
    }
    expectation += prob * static_cast<long double>(distinct);

    std::size_t pos = 0;
    while (pos < m && ++tuple[pos] == s) {
      tuple[pos] = 0;
      ++pos;
    }
    if (pos == m) break;
  }
  return static_cast<double>(expectation);
}

MonteCarloEstimate monte_carlo_expected_cardinality(const MassVector& z,
                                                    std::uint64_t m,
                                                    std::uint64_t trials,
                                                    std::uint64_t seed) {
  if (m == 0) {
    throw std::invalid_argument("draw count m must be >= 1");
  }
  if (trials < 100) {
    throw std::invalid_argument("need at least 100 trials");
  }
  const std::vector<double> p = normalize(z).values();
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::vector<bool> seen(p.size());
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::fill(seen.begin(), seen.end(), false);
    std::size_t distinct = 0;
    for (std::uint64_t d = 0; d < m; ++d) {
      // u in (0,1] with lower_bound: a zero-probability state's half-open
      // cdf interval is empty, so it is never drawn.
      const double u = uniform01_open(rng);
      const std::size_t state = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (!seen[state]) {
        seen[state] = true;
        ++distinct;
      }
    }
    const double x = static_cast<double>(distinct);
    sum += x;
    sum_sq += x * x;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.estimate = sum / static_cast<double>(trials);
  const double n = static_cast<double>(trials);
  const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  est.standard_error = std::sqrt(var / n);
  return est;
}

double lemma_log_ratio_sum(const std::vector<double>& a) {
  if (a.size() < 2) {
    throw std::invalid_argument("need at least 2 entries");
  }
  std::vector<double> positive;
  for (double v : a) {
    if (v < 0.0) {
      throw std::invalid_argument("entries must be non-negative");
    }
    if (v > 0.0) positive.push_back(v);
  }
  if (positive.empty()) {
    throw std::invalid_argument("need at least 1 positive entry");
  }
  double sum = 0.0;
  for (double ai : positive) {
    for (double aj : positive) {
      sum += ai * std::log(ai / aj);
    }
  }
  return sum;
}

double lemma_dot_product(const std::vector<double>& w,
                         const std::vector<double>& x) {
  if (w.size() != x.size() || w.size() < 2) {
    throw std::invalid_argument("w and x must have equal lengths >= 2");
  }
  bool w_uniform = true, x_uniform = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) {
      throw std::invalid_argument("w must be non-negative");
    }
    if (i > 0 && w[i] > w[i - 1]) {
      throw std::invalid_argument("w must be sorted descending");
    }
    if (w[i] != w[0]) w_uniform = false;
    if (x[i] != x[0]) x_uniform = false;
  }
  if (w_uniform) {
    throw std::invalid_argument("w must be non-uniform");
  }
  if (x_uniform) {
    throw std::invalid_argument("x must be non-uniform");
  }
  const double x_sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(x_sum) > 1e-12) {
    throw std::invalid_argument("x must sum to 0 within 1e-12");
  }
  bool seen_negative = false;
  for (double xi : x) {
    if (xi < 0.0) {
      seen_negative = true;
    } else if (seen_negative) {
      throw std::invalid_argument(
          "x must be a run of non-negative entries followed by a run of "
          "negative entries");
    }
  }
  if (!seen_negative) {
    throw std::invalid_argument("x must end with at least one negative entry");
  }
  return std::inner_product(w.begin(), w.end(), x.begin(), 0.0);
}

}  // namespace entcard
