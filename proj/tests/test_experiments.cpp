#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "entcard/experiments.hpp"
#include "entcard/verify.hpp"

using namespace entcard;
using doctest::Approx;

TEST_CASE("simplex sampling") {
  const ProbabilityVector p = sample_simplex(5, 42);
  REQUIRE(p.size() == 5);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i] > 0.0);
    total += p[i];
  }
  CHECK(total == Approx(1.0).epsilon(1e-12));

  // deterministic for a fixed seed, different across seeds
  const ProbabilityVector again = sample_simplex(5, 42);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(again[i] == p[i]);
  const ProbabilityVector other = sample_simplex(5, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < p.size(); ++i) any_diff |= (other[i] != p[i]);
  CHECK(any_diff);

  CHECK_THROWS_AS(sample_simplex(1, 42), std::invalid_argument);
  CHECK_THROWS_AS(sample_simplex(0, 42), std::invalid_argument);
}

TEST_CASE("simplex sampling is unbiased per coordinate") {
  // flat distribution on the simplex has per-coordinate mean 1/s with
  // variance (s-1)/(s^2 (s+1)); check the sample mean within 4 sigma
  const std::uint64_t s = 4;
  const int n = 20000;
  std::vector<double> sums(s, 0.0);
  for (int i = 0; i < n; ++i) {
    const ProbabilityVector p = sample_simplex(s, 1000 + static_cast<std::uint64_t>(i));
    for (std::uint64_t k = 0; k < s; ++k) sums[k] += p[k];
  }
  const double variance =
      static_cast<double>(s - 1) / (static_cast<double>(s * s) * (s + 1));
  const double sigma = std::sqrt(variance / n);
  for (std::uint64_t k = 0; k < s; ++k) {
    CHECK(std::abs(sums[k] / n - 1.0 / static_cast<double>(s)) < 4.0 * sigma);
  }
}

TEST_CASE("figure1 data") {
  const auto records = figure1_data(500, 42);
  REQUIRE(records.size() == 500);
  const double ln3 = std::log(3.0);
  for (const ExperimentRecord& r : records) {
    CHECK(r.s == 3);
    CHECK(r.m == 0);
    CHECK(r.probabilities.size() == 3);
    CHECK(r.entropy >= 0.0);
    CHECK(r.entropy <= ln3 + 1e-12);
    CHECK(r.nonzero_count == 3);  // interior samples almost surely
  }
  // deterministic, and individual records regenerable from their own seed
  const auto again = figure1_data(500, 42);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(again[i].entropy == records[i].entropy);
    const ProbabilityVector solo = sample_simplex(3, records[i].seed);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(solo[k] == records[i].probabilities[k]);
    }
  }
  // seeds must differ across records
  std::set<std::uint64_t> seeds;
  for (const ExperimentRecord& r : records) seeds.insert(r.seed);
  CHECK(seeds.size() == records.size());
}

TEST_CASE("figure2 data") {
  const auto records = figure2_data(400, 2, 20, 3, 30, 7);
  REQUIRE(records.size() == 400);
  std::set<std::uint64_t> seen_s, seen_m;
  for (const ExperimentRecord& r : records) {
    CHECK(r.s >= 2);
    CHECK(r.s <= 20);
    CHECK(r.m >= 3);
    CHECK(r.m <= 30);
    seen_s.insert(r.s);
    seen_m.insert(r.m);
    CHECK(r.expected_cardinality >= 1.0 - 1e-12);
    CHECK(r.expected_cardinality <=
          std::min(static_cast<double>(r.s), static_cast<double>(r.m)) + 1e-12);
    CHECK(r.entropy <= std::log(static_cast<double>(r.s)) + 1e-12);
  }
  CHECK(seen_s.size() > 5);  // ranges actually explored
  CHECK(seen_m.size() > 5);
  CHECK_THROWS_AS(figure2_data(10, 5, 2, 1, 10, 7), std::invalid_argument);
  CHECK_THROWS_AS(figure2_data(10, 1, 4, 1, 10, 7), std::invalid_argument);
}

TEST_CASE("figure3 data restricts s to the fixed bucket set") {
  const std::set<std::uint64_t> allowed(std::begin(kFigure3StateCounts),
                                        std::end(kFigure3StateCounts));
  const auto records = figure3_data(600, 2, 100, 11);
  REQUIRE(records.size() == 600);
  std::set<std::uint64_t> seen;
  for (const ExperimentRecord& r : records) {
    CHECK(allowed.count(r.s) == 1);
    seen.insert(r.s);
    CHECK(r.m >= 2);
    CHECK(r.m <= 100);
  }
  CHECK(seen.size() == allowed.size());  // 600 draws hit every bucket
}

TEST_CASE("verification harness covers every documented invariant") {
  VerifyOptions options;
  options.trials = 1;
  options.seed = 42;
  const auto reports = verify_corollaries(options);
  const std::vector<std::string> expected = {
      "entropy_gradient_matches_finite_differences",
      "entropy_gradient_forms_agree",
      "gradient_sign_at_extremes",
      "gradient_strictly_decreasing_in_mass",
      "gradient_sum_positive",
      "equal_masses_get_equal_gradients",
      "expected_cardinality_bounds_and_monotone_in_m",
      "expected_cardinality_gradient_matches_finite_differences",
      "decrease_condition_matches_gradient_sign",
      "step_preserves_mass_order_and_widens_gaps",
      "step_preserves_probability_order",
      "smallest_probability_decreases_largest_increases",
      "total_mass_strictly_decreases",
      "entropy_strictly_decreases",
      "expected_cardinality_decreases_under_entropy_step",
      "probability_decrease_bound_is_sound",
      "bound_factors_monotone_across_steps",
      "descent_terminates_at_cardinality_one",
      "zero_masses_stay_zero",
      "closed_form_matches_exhaustive_enumeration",
      "lemma_log_ratio_sum_positive",
      "lemma_dot_product_positive",
      "monte_carlo_matches_closed_form",
      "gaussian_entropy_monotone_in_variance",
      "contraction_preserves_mean_and_scales_variance",
      "variance_gradient_matches_finite_differences",
      "covering_number_matches_greedy_minimal_cover",
      "range_descent_monotone_and_terminates",
  };
  REQUIRE(reports.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(reports[i].check_name == expected[i]);
    CHECK(reports[i].trials >= 1);
    CHECK(reports[i].passed());
    CHECK(reports[i].first_counterexample.empty());
  }
}

TEST_CASE("verification harness passes a modest random sweep") {
  VerifyOptions options;
  options.trials = 50;
  options.seed = 7;
  for (const InvariantReport& r : verify_corollaries(options)) {
    INFO(r.check_name << ": " << r.first_counterexample);
    CHECK(r.passed());
  }
}

TEST_CASE("mutated gradient sign is caught by the harness") {
  VerifyOptions options;
  options.trials = 20;
  options.seed = 42;
  options.mutate_gradient_sign = true;
  const auto reports = verify_corollaries(options);
  bool sign_check_failed = false;
  for (const InvariantReport& r : reports) {
    if (r.check_name == "gradient_sign_at_extremes") {
      sign_check_failed = !r.passed();
      CHECK(r.failures > 0);
      CHECK_FALSE(r.first_counterexample.empty());
    }
  }
  CHECK(sign_check_failed);
}
