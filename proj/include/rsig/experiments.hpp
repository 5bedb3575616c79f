#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rsig/analysis.hpp"
#include "rsig/models.hpp"

namespace rsig {

/// Bernoulli estimate with a 95% Wilson score interval.
struct TrialStats {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int trials = 0;
  int successes = 0;
};

TrialStats wilson_interval(int successes, int trials);

struct ExperimentConfig {
  ModelParams model;
  PropertySpec property;
  std::vector<double> x_grid;        // n = round(e^{x d}) per grid point
  int trials = 100;
  SeedSpec seed;
  std::uint64_t n_cap = 50'000'000;  // safety cap on the implied family size
  int threads = 0;                   // 0 = hardware concurrency
  double time_budget_s = 0.0;        // 0 = unlimited
  bool fast_sampler = false;         // word-parallel binomial generation

  void validate() const;
};

struct ScanPoint {
  double x = 0.0;
  std::uint64_t n = 0;
  TrialStats stats;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::optional<double> midpoint;  // first upward crossing of 1/2, interpolated
  bool monotone_ok = true;         // no CI-separated decrease along the grid
};

/// Size of the family at exponent x: round(e^{x d}).
std::uint64_t family_size_for(double x, int d);

/// Estimates P(property) at one exponent; trial t runs on stream
/// seed.stream_id + t.
TrialStats estimate_probability(const ExperimentConfig& config, double x);

/// Full transition curve over config.x_grid. Grid point g uses streams
/// seed.stream_id + g * trials + [0, trials).
ScanResult threshold_scan(const ExperimentConfig& config);

struct HittingEnsemble {
  std::vector<std::uint64_t> samples;  // per run; n_max when saturated
  std::vector<std::uint8_t> saturated;
  std::vector<double> normalized;      // log(N)/d over non-saturated runs
  double mean = std::numeric_limits<double>::quiet_NaN();
  double stdev = std::numeric_limits<double>::quiet_NaN();
  double saturation_rate = 0.0;
  bool config_ok = true;               // false when saturation exceeds 5%
};

HittingEnsemble hitting_ensemble(const ModelParams& model, const PropertySpec& property,
                                 int runs, SeedSpec seed, std::uint64_t n_max,
                                 int threads = 0);

struct DimensionStats {
  int s = 0;
  int d = 0;
  int runs = 0;
  std::vector<std::uint64_t> hit_times;      // per run
  std::vector<std::vector<int>> member_dims; // per run, clique-member dimensions
  double mean_dim_fraction = std::numeric_limits<double>::quiet_NaN();
  double stdev_dim_fraction = std::numeric_limits<double>::quiet_NaN();
  std::int64_t member_count = 0;
};

/// Runs the clique(s) hitting time and measures the dimensions of the
/// vertices lying in s-cliques at that moment.
DimensionStats dimension_at_hitting(int s, const ModelParams& model, int runs, SeedSpec seed,
                                    std::uint64_t n_max, int threads = 0);

struct QuasirandomnessReport {
  int d = 0;
  double epsilon = 0.0;
  int n = 0;
  int trials = 0;
  double expected_edges = 0.0;
  double expected_c4 = 0.0;
  std::vector<std::int64_t> edges;  // per trial
  std::vector<std::int64_t> c4;
  double mean_edge_rel_err = 0.0;   // signed relative errors of the means
  double mean_c4_rel_err = 0.0;
};

/// Samples G_{[n],d,1-eps} and compares edge and 4-cycle counts with the
/// closed-form predictions.
QuasirandomnessReport quasirandomness_report(int d, double epsilon, int n, int trials,
                                             SeedSpec seed, int threads = 0);

}  // namespace rsig
