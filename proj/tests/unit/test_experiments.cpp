#include "rsig/experiments.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rsig/theory.hpp"

using namespace rsig;

TEST_CASE("wilson interval basics") {
  const TrialStats ts = wilson_interval(30, 100);
  CHECK(ts.estimate == doctest::Approx(0.3));
  CHECK(ts.ci_low < 0.3);
  CHECK(ts.ci_high > 0.3);
  CHECK(ts.ci_low >= 0.0);
  CHECK(ts.ci_high <= 1.0);
  const TrialStats zero = wilson_interval(0, 50);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.ci_low == 0.0);
  CHECK(zero.ci_high > 0.0);
}

TEST_CASE("wilson interval covers a Bernoulli(0.3) rate") {
  // 1000 batches of 250 samples; the nominal 95% interval must cover the
  // true rate in at least 93% of batches.
  const double p = 0.3;
  const int batches = 1000, per_batch = 250;
  Rng rng(SeedSpec{71, 0});
  int covered = 0;
  for (int b = 0; b < batches; ++b) {
    int successes = 0;
    for (int i = 0; i < per_batch; ++i) successes += rng.next_u01() < p;
    const TrialStats ts = wilson_interval(successes, per_batch);
    covered += (ts.ci_low <= p && p <= ts.ci_high);
  }
  CHECK(covered >= 930);
}

TEST_CASE("family_size_for rounds e^{xd}") {
  CHECK(family_size_for(0.0, 30) == 1);
  CHECK(family_size_for(std::log(7.0) / 10, 10) == 7);
  CHECK_THROWS_AS(family_size_for(2.0, 50), std::invalid_argument);
}

TEST_CASE("estimate_probability trivial properties") {
  ExperimentConfig config;
  config.model = ModelParams::binomial(10, 0.3);
  config.property = PropertySpec::clique(1);
  config.trials = 40;
  config.seed = {72, 0};
  CHECK(estimate_probability(config, 0.1).estimate == 1.0);

  // A single proper subcube essentially never covers Q_10.
  config.property = PropertySpec::cover();
  const TrialStats cover1 = estimate_probability(config, 0.0);  // n = 1
  CHECK(cover1.estimate <= 1e-3);
}

TEST_CASE("estimate_probability is monotone along the grid up to CI noise") {
  ExperimentConfig config;
  config.model = ModelParams::binomial(20, 0.5);
  config.property = PropertySpec::clique(2);
  config.trials = 150;
  config.seed = {73, 0};
  config.x_grid = {0.02, 0.05, 0.08, 0.11, 0.14};
  const ScanResult scan = threshold_scan(config);
  CHECK(scan.monotone_ok);
  CHECK(scan.points.size() == 5);
  CHECK(scan.points.front().stats.estimate < scan.points.back().stats.estimate);
}

TEST_CASE("threshold_scan is reproducible bit for bit") {
  ExperimentConfig config;
  config.model = ModelParams::uniform(12, 6);
  config.property = PropertySpec::clique(2);
  config.trials = 60;
  config.seed = {74, 5};
  config.x_grid = {0.05, 0.1, 0.15, 0.2};
  config.threads = 2;
  const ScanResult a = threshold_scan(config);
  const ScanResult b = threshold_scan(config);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].n == b.points[i].n);
    CHECK(a.points[i].stats.successes == b.points[i].stats.successes);
    CHECK(a.points[i].stats.estimate == b.points[i].stats.estimate);
  }
  CHECK(a.midpoint.has_value() == b.midpoint.has_value());
  if (a.midpoint) CHECK(*a.midpoint == *b.midpoint);
}

TEST_CASE("threshold_scan reports an out-of-range curve as no midpoint") {
  ExperimentConfig config;
  config.model = ModelParams::binomial(25, 0.5);
  config.property = PropertySpec::cover();
  config.trials = 10;
  config.seed = {75, 0};
  config.x_grid = {0.0, 0.01};  // far below the covering transition
  const ScanResult scan = threshold_scan(config);
  CHECK_FALSE(scan.midpoint.has_value());
  for (const ScanPoint& pt : scan.points) CHECK(pt.stats.estimate == 0.0);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.model = ModelParams::binomial(30, 0.5);
  config.property = PropertySpec::cover();
  config.trials = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.trials = 5;
  config.x_grid = {0.9};  // e^{27} far above the default cap
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("hitting_ensemble trivial and two-point laws") {
  const HittingEnsemble ones = hitting_ensemble(ModelParams::binomial(9, 0.4),
                                                PropertySpec::clique(1), 50, SeedSpec{76, 0}, 10);
  for (auto n : ones.samples) CHECK(n == 1);
  CHECK(ones.mean == doctest::Approx(0.0));
  CHECK(ones.config_ok);

  // d=1, p=0: N=2 or 3 with equal probability, so E[N] = 2.5.
  const int runs = 100'000;
  const HittingEnsemble law = hitting_ensemble(ModelParams::binomial(1, 0.0),
                                               PropertySpec::clique(2), runs, SeedSpec{76, 1}, 10);
  double mean_n = 0.0;
  for (auto n : law.samples) {
    REQUIRE((n == 2 || n == 3));
    mean_n += static_cast<double>(n);
  }
  mean_n /= runs;
  CHECK(std::abs(mean_n - 2.5) <= 4 * 0.5 / std::sqrt(static_cast<double>(runs)));
}

TEST_CASE("hitting_ensemble flags heavy saturation") {
  const HittingEnsemble sat = hitting_ensemble(ModelParams::binomial(8, 0.0),
                                               PropertySpec::cover(), 20, SeedSpec{76, 2}, 10);
  CHECK(sat.saturation_rate == 1.0);
  CHECK_FALSE(sat.config_ok);
  CHECK(sat.normalized.empty());
}

TEST_CASE("dimension_at_hitting at s=1 sees unconditioned dimensions") {
  const int runs = 400, d = 40;
  const double p = 0.35;
  const DimensionStats stats =
      dimension_at_hitting(1, ModelParams::binomial(d, p), runs, SeedSpec{77, 0}, 10);
  CHECK(stats.member_count == runs);  // exactly the first vertex each run
  const double se = std::sqrt(p * (1.0 - p) / d / runs);
  CHECK(std::abs(stats.mean_dim_fraction - p) <= 3 * se);
}

TEST_CASE("dimension_at_hitting concentrates near alpha_s") {
  const int runs = 60, d = 40;
  const DimensionStats stats =
      dimension_at_hitting(2, ModelParams::binomial(d, 0.5), runs, SeedSpec{77, 1}, 100000);
  CHECK(stats.member_count >= 2 * runs);
  CHECK(std::abs(stats.mean_dim_fraction - theory::alpha_s(0.5, 2)) < 0.1);
}

TEST_CASE("quasirandomness_report: epsilon = 0 gives the complete graph") {
  const QuasirandomnessReport rep = quasirandomness_report(16, 0.0, 30, 2, SeedSpec{78, 0});
  const double n = 30;
  CHECK(rep.expected_edges == doctest::Approx(n * (n - 1) / 2));
  CHECK(rep.expected_c4 == doctest::Approx(n * (n - 1) * (n - 2) * (n - 3) / 8));
  for (auto e : rep.edges) CHECK(e == 30 * 29 / 2);
  for (auto c : rep.c4) CHECK(c == 27405 * 3);  // 3 C(30,4)
  CHECK(rep.mean_edge_rel_err == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.mean_c4_rel_err == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quasirandomness_report tracks predictions at moderate scale") {
  const QuasirandomnessReport rep = quasirandomness_report(36, 1.0 / 6.0, 300, 1, SeedSpec{78, 1});
  CHECK(std::abs(rep.mean_edge_rel_err) < 0.10);
  CHECK(std::abs(rep.mean_c4_rel_err) < 0.30);
}

TEST_CASE("experiment budget raises DeadlineExceeded") {
  ExperimentConfig config;
  config.model = ModelParams::binomial(46, 0.45);
  config.property = PropertySpec::cover();
  config.trials = 4;
  config.seed = {79, 0};
  config.n_cap = 2'000'000'000;
  config.time_budget_s = 0.05;
  config.fast_sampler = true;
  CHECK_THROWS_AS(estimate_probability(config, 0.374), DeadlineExceeded);  // n about 3e7
}

TEST_CASE("oversized cover trials are refused, not thrashed") {
  CHECK_THROWS_WITH_AS(
      is_cover_sampled(ModelParams::binomial(40, 0.3), 500'000'000, SeedSpec{79, 1}, true),
      doctest::Contains("memory budget"), std::runtime_error);
}

TEST_CASE("is_cover_sampled matches is_cover on materialized families") {
  for (std::uint64_t stream = 0; stream < 30; ++stream) {
    const ModelParams params =
        (stream % 2) ? ModelParams::binomial(10, 0.55) : ModelParams::uniform(10, 6);
    const SeedSpec seed{80, stream};
    const std::uint64_t n = 40 + 10 * stream;
    const FeatureFamily family = sample_family(params, n, seed);
    CHECK(is_cover_sampled(params, n, seed) == is_cover(family));
  }
}
