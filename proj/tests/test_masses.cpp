#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "entcard/masses.hpp"
#include "entcard/oracles.hpp"
#include "test_util.hpp"

using namespace entcard;
using doctest::Approx;

namespace {
const double kLn2 = std::numbers::ln2;
}

TEST_CASE("mass vector validation") {
  CHECK_THROWS_AS(MassVector(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(MassVector({1.0, -0.5}), std::invalid_argument);
  CHECK(MassVector({0.0, 0.0}).total() == 0.0);
  CHECK(MassVector({5.0}).size() == 1);
}

TEST_CASE("normalize") {
  CHECK(normalize(MassVector({1, 1}))[0] == Approx(0.5));
  CHECK(normalize(MassVector({0, 2}))[0] == 0.0);
  CHECK(normalize(MassVector({0, 2}))[1] == 1.0);
  CHECK(normalize(MassVector({1, 3}))[0] == Approx(0.25));
  CHECK(normalize(MassVector({1, 3}))[1] == Approx(0.75));
  CHECK_THROWS_AS(normalize(MassVector({0, 0})), std::invalid_argument);
}

TEST_CASE("entropy") {
  CHECK(entropy(MassVector({0, 5, 0})) == 0.0);
  CHECK(entropy(MassVector({1, 1, 1})) == Approx(std::log(3.0)).epsilon(1e-14));
  // ln 3 - (2/3) ln 2, checked against arbitrary-precision evaluation
  CHECK(entropy(MassVector({1, 2})) == Approx(0.6365141682948128).epsilon(1e-14));
  CHECK_THROWS_AS(entropy(MassVector({0, 0})), std::invalid_argument);
  // degenerate single state
  CHECK(entropy(MassVector({7})) == 0.0);
}

TEST_CASE("entropy bounded by ln s on random masses") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const MassVector z = testing::random_masses(rng, 2, 12, 0.0, 10.0);
    if (z.total() <= 0.0) continue;
    const double h = entropy(z);
    CHECK(h >= 0.0);
    CHECK(h <= std::log(static_cast<double>(z.size())) + 1e-12);
  }
}

TEST_CASE("entropy gradient closed form") {
  const auto uniform = entropy_gradient(MassVector({1, 1, 1}));
  for (double g : uniform) CHECK(g == 0.0);

  const auto g = entropy_gradient(MassVector({1, 2}));
  CHECK(g[0] == Approx(2 * kLn2 / 9).epsilon(1e-14));
  CHECK(g[1] == Approx(-kLn2 / 9).epsilon(1e-14));

  CHECK_THROWS_AS(entropy_gradient(MassVector({0, 0})), std::invalid_argument);
}

TEST_CASE("zero mass states get zero gradient and do not disturb the rest") {
  const auto with_zero = entropy_gradient(MassVector({0, 1, 2}));
  const auto without = entropy_gradient(MassVector({1, 2}));
  CHECK(with_zero[0] == 0.0);
  CHECK(with_zero[1] == without[0]);
  CHECK(with_zero[2] == without[1]);
}

TEST_CASE("entropy gradient agrees with its normalized form") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const MassVector z = testing::random_masses(rng, 2, 10, 0.1, 10.0);
    const auto direct = entropy_gradient(z);
    const auto alt = entropy_gradient_alt(z);
    double scale = 1e-12;
    for (std::size_t k = 0; k < z.size(); ++k) {
      scale = std::max({scale, std::abs(direct[k]), std::abs(alt[k])});
    }
    for (std::size_t k = 0; k < z.size(); ++k) {
      CHECK(std::abs(direct[k] - alt[k]) / scale < 1e-10);
    }
  }
}

TEST_CASE("permutation equivariance of the gradient") {
  const MassVector z({0.3, 2.0, 1.1, 0.3});
  const auto g = entropy_gradient(z);
  CHECK(g[0] == g[3]);  // equal masses, equal gradients
  const auto swapped = entropy_gradient(MassVector({2.0, 0.3, 1.1, 0.3}));
  CHECK(swapped[1] == g[0]);
  CHECK(swapped[0] == g[1]);
}

TEST_CASE("cardinality") {
  CHECK(cardinality(MassVector({0, 3, 0, 2}), 0.0) == 2);
  CHECK(cardinality(MassVector({1, 1, 1}), 0.0) == 3);
  CHECK(cardinality(MassVector({1e-15, 1}), 1e-12) == 1);
  CHECK_THROWS_AS(cardinality(MassVector({1}), -1.0), std::invalid_argument);
}

TEST_CASE("expected cardinality") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const MassVector z = testing::random_masses(rng, 2, 10, 0.1, 10.0);
    CHECK(expected_cardinality(z, 1) == Approx(1.0).epsilon(1e-13));
  }
  CHECK(expected_cardinality(MassVector({1, 1}), 2) == Approx(1.5).epsilon(1e-14));
  CHECK(expected_cardinality(MassVector({0, 7}), 100) == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(expected_cardinality(MassVector({1, 1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(expected_cardinality(MassVector({1, 1}), kMaxDrawCount + 1),
                  std::invalid_argument);
  // strictly below cardinality unless cardinality <= 1
  CHECK(expected_cardinality(MassVector({1, 2, 3}), 5) < 3.0);
  CHECK(expected_cardinality(MassVector({0, 4}), 3) == Approx(1.0));
  // non-decreasing in m, capped by min(m, cardinality)
  const MassVector z({1, 2, 4, 8});
  double previous = 0.0;
  for (std::uint64_t m = 1; m <= 30; ++m) {
    const double u = expected_cardinality(z, m);
    CHECK(u >= previous);
    CHECK(u <= std::min<double>(static_cast<double>(m), 4.0) + 1e-12);
    previous = u;
  }
}

TEST_CASE("expected cardinality gradient") {
  for (double g : expected_cardinality_gradient(MassVector({2, 2, 2}), 7)) {
    CHECK(std::abs(g) <= 1e-15);
  }
  for (double g : expected_cardinality_gradient(MassVector({1, 2, 5}), 1)) {
    CHECK(g == 0.0);
  }
  const auto g = expected_cardinality_gradient(MassVector({1, 2}), 2);
  CHECK(g[0] == Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK(g[1] == Approx(-2.0 / 27.0).epsilon(1e-14));
  CHECK_THROWS_AS(expected_cardinality_gradient(MassVector({1, 2}), 0),
                  std::invalid_argument);
}

TEST_CASE("mass decrease condition") {
  CHECK(mass_decrease_condition(MassVector({1, 2}), 0));
  CHECK_FALSE(mass_decrease_condition(MassVector({1, 2}), 1));
  CHECK_FALSE(mass_decrease_condition(MassVector({1, 1}), 0));
  CHECK_THROWS_AS(mass_decrease_condition(MassVector({1, 2}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(mass_decrease_condition(MassVector({0, 2}), 0),
                  std::invalid_argument);
}

TEST_CASE("mass decrease condition is exactly the gradient sign") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const MassVector z = testing::random_masses(rng, 2, 10, 0.1, 10.0);
    const auto g = entropy_gradient(z);
    for (std::size_t k = 0; k < z.size(); ++k) {
      CHECK(mass_decrease_condition(z, k) == (g[k] > 0.0));
    }
  }
}

TEST_CASE("probability change closed form") {
  for (double d : probability_change(MassVector({2, 2, 2}), 0.1)) {
    CHECK(d == 0.0);
  }

  const MassVector z({1, 2});
  const double eta = 0.01;
  const auto delta = probability_change(z, eta);
  // recompute through the step directly
  const auto g = entropy_gradient(z);
  const MassVector stepped({z[0] - eta * g[0], z[1] - eta * g[1]});
  const auto p_before = normalize(z);
  const auto p_after = normalize(stepped);
  for (std::size_t k = 0; k < z.size(); ++k) {
    CHECK(std::abs(delta[k] - (p_after[k] - p_before[k])) < 1e-12);
  }
  CHECK(std::abs(delta[0] + delta[1]) < 1e-12);

  const auto delta3 = probability_change(MassVector({1, 2, 4}), 0.01);
  CHECK(delta3[0] < 0.0);
  CHECK(delta3[2] > 0.0);

  // forcing a clamp violates the precondition and names the state
  CHECK_THROWS_WITH_AS(probability_change(MassVector({1e-3, 1.0}), 100.0),
                       doctest::Contains("state 0"), std::invalid_argument);
}

TEST_CASE("complement power is stable at large m") {
  CHECK(complement_power(0.0, 1000) == 1.0);
  CHECK(complement_power(1.0, 3) == 0.0);
  CHECK(complement_power(1e-9, 1'000'000) ==
        Approx(std::exp(-1e-3)).epsilon(1e-10));
  CHECK(complement_power(0.75, 4) == Approx(std::pow(0.25, 4)).epsilon(1e-14));
}
