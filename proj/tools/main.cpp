#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entcard/continuous.hpp"
#include "entcard/descent.hpp"
#include "entcard/experiments.hpp"
#include "entcard/io.hpp"
#include "entcard/masses.hpp"
#include "entcard/oracles.hpp"
#include "entcard/rng.hpp"
#include "entcard/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    values.push_back(std::stod(token));
  }
  if (values.empty()) {
    throw std::invalid_argument("expected a comma-separated list of numbers");
  }
  return values;
}

std::vector<std::uint64_t> parse_counts(const std::string& csv) {
  std::vector<std::uint64_t> values;
  for (double v : parse_reals(csv)) {
    if (v < 1 || v != std::floor(v)) {
      throw std::invalid_argument("draw counts must be positive integers");
    }
    values.push_back(static_cast<std::uint64_t>(v));
  }
  return values;
}

// Points are ';'-separated with ','-separated coordinates. A bare comma
// list is a 1-D cloud.
entcard::SampleCloud parse_cloud(const std::string& text) {
  entcard::SampleCloud cloud;
  if (text.find(';') == std::string::npos) {
    for (double x : parse_reals(text)) cloud.points.push_back({x});
    return cloud;
  }
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ';')) {
    cloud.points.push_back(parse_reals(token));
  }
  return cloud;
}

// Relative output paths land under ENTCARD_OUTDIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (const char* dir = std::getenv("ENTCARD_OUTDIR"); dir && p.is_relative()) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

// Runs `body(out)` against the chosen output file, or stdout if none.
int with_output(const std::string& path,
                const std::function<int(std::ostream&)>& body) {
  if (path.empty()) {
    return body(std::cout);
  }
  const auto resolved = resolve_output(path);
  std::ofstream out(resolved);
  if (!out) {
    std::cerr << "error: cannot open " << resolved << " for writing\n";
    return kExitUsage;
  }
  return body(out);
}

int run_descend(const std::string& masses_csv, double lr,
                std::uint64_t max_steps, double tol,
                const std::string& draws_csv, std::uint64_t stride,
                const std::string& stop_mode, const std::string& format,
                const std::string& output) {
  entcard::DescentConfig config;
  config.learning_rate = lr;
  config.max_steps = max_steps;
  config.zero_snap_tolerance = tol;
  config.record_stride = stride;
  if (!draws_csv.empty()) config.tracked_draw_counts = parse_counts(draws_csv);
  config.stop_mode = stop_mode == "max-steps-only"
                         ? entcard::StopMode::max_steps_only
                         : entcard::StopMode::cardinality_one;
  const entcard::MassVector z0{parse_reals(masses_csv)};
  if (z0.total() <= 0.0) {
    throw std::invalid_argument("masses must include a positive entry");
  }
  const entcard::Trajectory traj = entcard::run(z0, config);
  return with_output(output, [&](std::ostream& out) {
    if (format == "csv") {
      entcard::write_trajectory_csv(out, traj);
    } else {
      entcard::write_trajectory_json_lines(out, traj);
    }
    return kExitOk;
  });
}

int run_verify(std::uint64_t trials, std::uint64_t seed, bool self_test,
               const std::string& output) {
  entcard::VerifyOptions options;
  options.trials = trials;
  options.seed = seed;
  options.mutate_gradient_sign = self_test;
  const auto reports = entcard::verify_corollaries(options);
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(),
                  [](const entcard::InvariantReport& r) { return r.passed(); });
  return with_output(output, [&](std::ostream& out) {
    entcard::write_reports(out, reports);
    return all_pass ? kExitOk : kExitCheckFailed;
  });
}

int run_figure(int which, std::uint64_t n, std::uint64_t seed,
               std::uint64_t s_min, std::uint64_t s_max, std::uint64_t m_min,
               std::uint64_t m_max, const std::string& output) {
  return with_output(output, [&](std::ostream& out) {
    switch (which) {
      case 1:
        entcard::write_figure1_csv(out, entcard::figure1_data(n, seed));
        return kExitOk;
      case 2:
        entcard::write_figure23_csv(
            out, entcard::figure2_data(n, s_min, s_max, m_min, m_max, seed));
        return kExitOk;
      case 3:
        entcard::write_figure23_csv(
            out, entcard::figure3_data(n, m_min, m_max, seed));
        return kExitOk;
      default:
        std::cerr << "error: unknown figure " << which << "\n";
        return kExitUsage;
    }
  });
}

int run_oracle_gradcheck(std::uint64_t trials, std::uint64_t seed,
                         std::ostream& out) {
  double worst_entropy = 0.0, worst_unique = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(entcard::derive_seed(seed, i));
    auto draw_masses = [&rng] {
      const std::uint64_t s = entcard::uniform_int(rng, 2, 12);
      std::vector<double> values(s);
      for (auto& v : values) v = 0.1 + 9.9 * entcard::uniform01(rng);
      return entcard::MassVector{std::move(values)};
    };
    // redraw near-flat points the finite difference cannot resolve
    entcard::MassVector z = draw_masses();
    while (!entcard::finite_difference_resolvable(entcard::entropy_gradient(z),
                                                  entcard::entropy(z), 1e-6)) {
      z = draw_masses();
    }
    const auto entropy_check = entcard::check_gradient(
        entcard::entropy_gradient(z),
        [](const entcard::MassVector& v) { return entcard::entropy(v); }, z, 1e-6);
    entcard::MassVector zu = z;
    std::uint64_t m = entcard::uniform_int(rng, 2, 20);
    while (!entcard::finite_difference_resolvable(
        entcard::expected_cardinality_gradient(zu, m),
        entcard::expected_cardinality(zu, m), 1e-6)) {
      zu = draw_masses();
      m = entcard::uniform_int(rng, 2, 20);
    }
    const auto unique_check = entcard::check_gradient(
        entcard::expected_cardinality_gradient(zu, m),
        [m](const entcard::MassVector& v) {
          return entcard::expected_cardinality(v, m);
        },
        zu, 1e-6);
    worst_entropy = std::max(worst_entropy, entropy_check.max_relative_error);
    worst_unique = std::max(worst_unique, unique_check.max_relative_error);
  }
  const bool pass = worst_entropy < 1e-6 && worst_unique < 1e-6;
  out << (pass ? "pass" : "FAIL") << " gradcheck trials=" << trials
      << " max_rel_err_entropy=" << entcard::format_double(worst_entropy)
      << " max_rel_err_expected_cardinality="
      << entcard::format_double(worst_unique) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_oracle_bruteforce(std::uint64_t max_s, std::uint64_t max_m,
                          std::uint64_t per_pair, std::uint64_t seed,
                          std::ostream& out) {
  double worst = 0.0;
  for (std::uint64_t s = 2; s <= max_s; ++s) {
    for (std::uint64_t m = 1; m <= max_m; ++m) {
      for (std::uint64_t i = 0; i < per_pair; ++i) {
        std::mt19937_64 rng(entcard::derive_seed(seed, (s * 131 + m) * 1009 + i));
        std::vector<double> values(s);
        for (auto& v : values) v = 0.1 + 9.9 * entcard::uniform01(rng);
        const entcard::MassVector z{std::move(values)};
        worst = std::max(worst,
                         std::abs(entcard::expected_cardinality(z, m) -
                                  entcard::brute_force_expected_cardinality(z, m)));
      }
    }
  }
  const bool pass = worst < 1e-12;
  out << (pass ? "pass" : "FAIL") << " bruteforce max_s=" << max_s
      << " max_m=" << max_m << " per_pair=" << per_pair
      << " max_abs_diff=" << entcard::format_double(worst) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_oracle_montecarlo(const std::string& masses_csv, std::uint64_t m,
                          std::uint64_t trials, std::uint64_t seed,
                          std::ostream& out) {
  const entcard::MassVector z{parse_reals(masses_csv)};
  const auto estimate = entcard::monte_carlo_expected_cardinality(z, m, trials, seed);
  const double closed = entcard::expected_cardinality(z, m);
  // Floor sigma at 1/trials so a saturated estimator (stderr 0, closed form
  // a hair below an integer) still passes.
  const double sigma = std::max(estimate.standard_error,
                                1.0 / static_cast<double>(estimate.trials));
  const bool pass = std::abs(estimate.estimate - closed) <= 4.0 * sigma;
  out << (pass ? "pass" : "FAIL") << " montecarlo m=" << m
      << " trials=" << trials
      << " estimate=" << entcard::format_double(estimate.estimate)
      << " stderr=" << entcard::format_double(estimate.standard_error)
      << " closed_form=" << entcard::format_double(closed) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_oracle_lemmas(std::uint64_t trials, std::uint64_t seed,
                      std::ostream& out) {
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(entcard::derive_seed(seed, i));
    const std::uint64_t s = entcard::uniform_int(rng, 2, 12);
    std::vector<double> a(s);
    for (auto& v : a) v = 0.05 + 10.0 * entcard::uniform01(rng);
    if (!(entcard::lemma_log_ratio_sum(a) > 0.0)) ++failures;

    std::vector<double> w(s);
    for (auto& v : w) v = 10.0 * entcard::uniform01(rng);
    std::sort(w.begin(), w.end(), std::greater<double>());
    if (w.front() == w.back()) w.front() += 1.0;
    std::vector<double> x(s);
    double mean = 0.0;
    for (auto& v : x) {
      v = 2.0 * entcard::uniform01(rng) - 1.0;
      mean += v;
    }
    mean /= static_cast<double>(s);
    for (auto& v : x) v -= mean;
    std::sort(x.begin(), x.end(), std::greater<double>());
    if (!(x.front() > 0.0)) x.front() = 1e-3;
    if (!(x.back() < 0.0)) x.back() = -1e-3;
    x.front() -= std::accumulate(x.begin(), x.end(), 0.0);
    if (!(entcard::lemma_dot_product(w, x) > 0.0)) ++failures;
  }
  const bool pass = failures == 0;
  out << (pass ? "pass" : "FAIL") << " lemmas trials=" << trials
      << " failures=" << failures << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_continuous_contract(const std::string& points_csv, double lr,
                            std::uint64_t steps, std::ostream& out) {
  entcard::SampleCloud cloud = parse_cloud(points_csv);
  const std::size_t dims = cloud.points.front().size();
  auto emit = [&](std::uint64_t t) {
    for (std::size_t d = 0; d < dims; ++d) {
      double mean = 0.0;
      for (const auto& p : cloud.points) mean += p[d];
      mean /= static_cast<double>(cloud.points.size());
      double var = 0.0;
      for (const auto& p : cloud.points) var += (p[d] - mean) * (p[d] - mean);
      var /= static_cast<double>(cloud.points.size());
      out << t << ',' << d << ',' << entcard::format_double(mean) << ','
          << entcard::format_double(var) << "\n";
    }
  };
  out << "step,dim,mean,variance\n";
  emit(0);
  for (std::uint64_t t = 1; t <= steps; ++t) {
    cloud = entcard::contract_step(cloud, lr);
    emit(t);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy, cardinality, and expected-cardinality dynamics for "
               "discrete probability masses"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "PRNG seed (default 42)")
      ->envname("ENTCARD_SEED");

  // descend
  auto* descend = app.add_subcommand(
      "descend", "Clamped entropy gradient descent on a mass vector");
  std::string masses_csv, draws_csv, output, format = "jsonl";
  double lr = 0.05, tol = 1e-9;
  std::uint64_t max_steps = 1'000'000, stride = 1;
  std::string stop_mode = "cardinality-one";
  descend->add_option("--masses", masses_csv, "Comma-separated initial masses")
      ->required();
  descend->add_option("--lr", lr, "Learning rate (default 0.05)");
  descend->add_option("--max-steps", max_steps, "Step budget (default 10^6)");
  descend->add_option("--tol", tol, "Zero-snap tolerance (default 1e-9)");
  descend->add_option("--draws", draws_csv,
                      "Draw counts m to log U(z,m) per step, e.g. 2,5,10");
  descend->add_option("--stride", stride, "Record every stride-th step");
  descend->add_option("--stop-mode", stop_mode,
                      "cardinality-one (default) or max-steps-only")
      ->check(CLI::IsMember({"cardinality-one", "max-steps-only"}));
  descend->add_option("--format", format, "jsonl (default) or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  descend->add_option("--output,-o", output, "Output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run every corollary/theorem/lemma invariant check");
  std::uint64_t trials = 1000;
  bool self_test = false;
  std::string verify_output;
  verify->add_option("--trials", trials, "Random trials per check (default 1000)");
  verify->add_flag("--self-test", self_test,
                   "Run with a sign-flipped gradient; the harness must fail");
  verify->add_option("--output,-o", verify_output, "Report file (default stdout)");

  // figure
  auto* figure = app.add_subcommand(
      "figure", "Regenerate scatter data as CSV (1, 2, or 3)");
  int which = 0;
  std::uint64_t n = 0, s_min = 2, s_max = 100, m_min = 2, m_max = 100;
  std::string figure_output;
  figure->add_option("which", which, "Figure id: 1, 2 or 3")->required();
  figure->add_option("--n", n, "Row count (default 50000 for 1, 10000 for 2/3)");
  figure->add_option("--s-min", s_min, "Minimum state count (figure 2)");
  figure->add_option("--s-max", s_max, "Maximum state count (figure 2)");
  figure->add_option("--m-min", m_min, "Minimum draw count (figures 2/3)");
  figure->add_option("--m-max", m_max, "Maximum draw count (figures 2/3)");
  figure->add_option("--output,-o", figure_output, "CSV file (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "Independent ground-truth checks: gradcheck, bruteforce, "
                "montecarlo, lemmas");
  std::string kind;
  std::uint64_t oracle_trials = 1000, max_s = 5, max_m = 5, per_pair = 100;
  std::uint64_t mc_m = 5, mc_trials = 100'000;
  std::string oracle_masses = "1,2,4", oracle_output;
  oracle->add_option("kind", kind, "gradcheck | bruteforce | montecarlo | lemmas")
      ->required()
      ->check(CLI::IsMember({"gradcheck", "bruteforce", "montecarlo", "lemmas"}));
  oracle->add_option("--trials", oracle_trials,
                     "Trials for gradcheck/lemmas (default 1000)");
  oracle->add_option("--max-s", max_s, "Max state count for bruteforce");
  oracle->add_option("--max-m", max_m, "Max draw count for bruteforce");
  oracle->add_option("--per-pair", per_pair, "Random vectors per (s,m) pair");
  oracle->add_option("--masses", oracle_masses, "Masses for montecarlo");
  oracle->add_option("--m", mc_m, "Draw count for montecarlo");
  oracle->add_option("--mc-trials", mc_trials, "Monte Carlo trials");
  oracle->add_option("--output,-o", oracle_output, "Report file (default stdout)");

  // continuous
  auto* continuous = app.add_subcommand(
      "continuous", "Continuous-case operations: uniform, gaussian, contract, "
                    "cover");
  std::string continuous_kind, variances_csv = "1", points_csv = "0,2";
  double a = 0.0, b = 1.0, eps = 0.0, cont_lr = 0.5;
  std::uint64_t cont_steps = 1, cont_max_steps = 1'000'000;
  std::string continuous_output;
  continuous->add_option("kind", continuous_kind,
                         "uniform | gaussian | contract | cover")
      ->required()
      ->check(CLI::IsMember({"uniform", "gaussian", "contract", "cover"}));
  continuous->add_option("--a", a, "Interval lower end");
  continuous->add_option("--b", b, "Interval upper end");
  continuous->add_option("--eps", eps,
                         "Covering radius; with `uniform` also enables range "
                         "descent");
  continuous->add_option("--variances", variances_csv,
                         "Comma-separated per-dimension variances");
  continuous->add_option("--points", points_csv,
                         "Sample cloud: 0,2 (1-D) or 0,0;1,1 (k-D)");
  continuous->add_option("--lr", cont_lr, "Step size for contract/range descent");
  continuous->add_option("--steps", cont_steps, "Contraction steps (default 1)");
  continuous->add_option("--max-steps", cont_max_steps,
                         "Range-descent step budget");
  continuous->add_option("--output,-o", continuous_output,
                         "Output file (default stdout)");

  // Let --seed appear after the subcommand name too.
  for (CLI::App* sub : {descend, verify, figure, oracle, continuous}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (descend->parsed()) {
      return run_descend(masses_csv, lr, max_steps, tol, draws_csv, stride,
                         stop_mode, format, output);
    }
    if (verify->parsed()) {
      return run_verify(trials, seed, self_test, verify_output);
    }
    if (figure->parsed()) {
      if (n == 0) n = which == 1 ? 50'000 : 10'000;
      return run_figure(which, n, seed, s_min, s_max, m_min, m_max,
                        figure_output);
    }
    if (oracle->parsed()) {
      return with_output(oracle_output, [&](std::ostream& out) {
        if (kind == "gradcheck") return run_oracle_gradcheck(oracle_trials, seed, out);
        if (kind == "bruteforce") {
          return run_oracle_bruteforce(max_s, max_m, per_pair, seed, out);
        }
        if (kind == "montecarlo") {
          return run_oracle_montecarlo(oracle_masses, mc_m, mc_trials, seed, out);
        }
        return run_oracle_lemmas(oracle_trials, seed, out);
      });
    }
    if (continuous->parsed()) {
      return with_output(continuous_output, [&](std::ostream& out) {
        if (continuous_kind == "uniform") {
          const entcard::IntervalUniform interval{a, b};
          if (eps > 0.0) {
            const auto trace = entcard::uniform_range_descent(
                interval, cont_lr, eps, cont_max_steps);
            out << "step,a,b,entropy,covering_number\n";
            for (std::size_t i = 0; i < trace.size(); ++i) {
              out << i << ',' << entcard::format_double(trace[i].a) << ','
                  << entcard::format_double(trace[i].b) << ','
                  << entcard::format_double(trace[i].entropy) << ','
                  << trace[i].covering_number << "\n";
            }
          } else {
            out << entcard::format_double(entcard::uniform_entropy(interval))
                << "\n";
          }
          return kExitOk;
        }
        if (continuous_kind == "gaussian") {
          out << entcard::format_double(entcard::gaussian_entropy(
                     {parse_reals(variances_csv)}))
              << "\n";
          return kExitOk;
        }
        if (continuous_kind == "cover") {
          out << entcard::interval_covering_number({a, b}, eps) << "\n";
          return kExitOk;
        }
        return run_continuous_contract(points_csv, cont_lr, cont_steps, out);
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
