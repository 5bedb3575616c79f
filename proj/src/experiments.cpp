#include "rsig/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "rsig/graph.hpp"
#include "rsig/theory.hpp"

namespace rsig {

namespace {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on a small worker pool. The first exception
// wins; remaining work is abandoned.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::min(effective_threads(threads), std::max(count, 1));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
        stop.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Monotone property check on a freshly sampled family of size n. Clique
// properties grow the family and stop at the first witness; covers evaluate
// the whole family.
bool property_holds(const ExperimentConfig& config, std::uint64_t n, SeedSpec seed,
                    const Deadline* deadline) {
  if (config.property.kind == PropertySpec::Kind::kClique) {
    if (config.property.s == 1) return n >= 1;
    FeatureFamily family = sample_family(config.model, 0, seed);
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (deadline && (m & 0xfff) == 0 && deadline->expired())
        throw DeadlineExceeded("trial exceeded the experiment budget");
      extend_family(family, config.model, m, seed);
      if (anchored_depth_at_least(family, static_cast<int>(m) - 1, config.property.s, deadline))
        return true;
    }
    return false;
  }
  return is_cover_sampled(config.model, n, seed, config.fast_sampler, deadline);
}

double stdev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (static_cast<double>(xs.size()) - 1.0));
}

}  // namespace

TrialStats wilson_interval(int successes, int trials) {
  TrialStats ts;
  ts.trials = trials;
  ts.successes = successes;
  if (trials <= 0) return ts;
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = trials;
  const double phat = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  ts.estimate = phat;
  ts.ci_low = (successes == 0) ? 0.0 : std::max(0.0, center - half);
  ts.ci_high = (successes == trials) ? 1.0 : std::min(1.0, center + half);
  return ts;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("experiment config: trials must be >= 1");
  for (double x : x_grid) {
    if (x < 0.0) throw std::invalid_argument("experiment config: x values must be >= 0");
    if (family_size_for(x, model.d()) > n_cap)
      throw std::invalid_argument("experiment config: grid requires n beyond n_cap");
  }
}

std::uint64_t family_size_for(double x, int d) {
  const double n = std::exp(x * d);
  if (n > 9.0e18) throw std::invalid_argument("family size overflows: x*d too large");
  return static_cast<std::uint64_t>(std::llround(n));
}

TrialStats estimate_probability(const ExperimentConfig& config, double x) {
  config.validate();
  const std::uint64_t n = family_size_for(x, config.model.d());
  if (n > config.n_cap) throw std::invalid_argument("estimate_probability: n exceeds n_cap");
  std::optional<Deadline> deadline;
  if (config.time_budget_s > 0) deadline.emplace(config.time_budget_s);

  std::atomic<int> successes{0};
  parallel_for(config.trials, config.threads, [&](int t) {
    const SeedSpec trial_seed = config.seed.with_stream(config.seed.stream_id +
                                                        static_cast<std::uint64_t>(t));
    if (property_holds(config, n, trial_seed, deadline ? &*deadline : nullptr))
      successes.fetch_add(1);
  });
  return wilson_interval(successes.load(), config.trials);
}

ScanResult threshold_scan(const ExperimentConfig& config) {
  config.validate();
  ScanResult result;
  std::vector<double> grid = config.x_grid;
  std::sort(grid.begin(), grid.end());

  for (std::size_t g = 0; g < grid.size(); ++g) {
    ExperimentConfig point_config = config;
    point_config.seed.stream_id =
        config.seed.stream_id + g * static_cast<std::uint64_t>(config.trials);
    ScanPoint point;
    point.x = grid[g];
    point.n = family_size_for(grid[g], config.model.d());
    point.stats = estimate_probability(point_config, grid[g]);
    result.points.push_back(point);
  }

  // Midpoint: first upward crossing of 1/2, linearly interpolated.
  for (std::size_t g = 0; g + 1 < result.points.size(); ++g) {
    const double e0 = result.points[g].stats.estimate;
    const double e1 = result.points[g + 1].stats.estimate;
    if (e0 < 0.5 && e1 >= 0.5) {
      const double x0 = result.points[g].x, x1 = result.points[g + 1].x;
      result.midpoint = x0 + (0.5 - e0) * (x1 - x0) / (e1 - e0);
      break;
    }
  }
  // Estimates must not decrease beyond CI noise as x grows.
  for (std::size_t i = 0; i < result.points.size(); ++i)
    for (std::size_t j = i + 1; j < result.points.size(); ++j)
      if (result.points[j].stats.ci_high < result.points[i].stats.ci_low)
        result.monotone_ok = false;
  return result;
}

HittingEnsemble hitting_ensemble(const ModelParams& model, const PropertySpec& property,
                                 int runs, SeedSpec seed, std::uint64_t n_max, int threads) {
  if (runs < 1) throw std::invalid_argument("hitting_ensemble: runs must be >= 1");
  HittingEnsemble ens;
  ens.samples.assign(static_cast<std::size_t>(runs), 0);
  ens.saturated.assign(static_cast<std::size_t>(runs), false);

  parallel_for(runs, threads, [&](int r) {
    bool sat = false;
    const std::uint64_t n = hitting_time(
        model, property, seed.with_stream(seed.stream_id + static_cast<std::uint64_t>(r)), n_max,
        &sat);
    ens.samples[static_cast<std::size_t>(r)] = n;
    ens.saturated[static_cast<std::size_t>(r)] = sat ? 1 : 0;
  });

  const int d = model.d();
  int saturated_count = 0;
  for (int r = 0; r < runs; ++r) {
    if (ens.saturated[static_cast<std::size_t>(r)]) {
      ++saturated_count;
      continue;
    }
    ens.normalized.push_back(std::log(static_cast<double>(ens.samples[static_cast<std::size_t>(r)])) /
                             std::max(d, 1));
  }
  ens.saturation_rate = static_cast<double>(saturated_count) / runs;
  ens.config_ok = ens.saturation_rate <= 0.05;
  if (!ens.normalized.empty()) {
    double sum = 0.0;
    for (double v : ens.normalized) sum += v;
    ens.mean = sum / static_cast<double>(ens.normalized.size());
    ens.stdev = stdev_of(ens.normalized, ens.mean);
  }
  return ens;
}

DimensionStats dimension_at_hitting(int s, const ModelParams& model, int runs, SeedSpec seed,
                                    std::uint64_t n_max, int threads) {
  if (s < 1) throw std::invalid_argument("dimension_at_hitting: s must be >= 1");
  if (runs < 1) throw std::invalid_argument("dimension_at_hitting: runs must be >= 1");
  DimensionStats stats;
  stats.s = s;
  stats.d = model.d();
  stats.runs = runs;
  stats.hit_times.assign(static_cast<std::size_t>(runs), 0);
  stats.member_dims.assign(static_cast<std::size_t>(runs), {});

  parallel_for(runs, threads, [&](int r) {
    const HittingOutcome out = run_hitting(
        model, PropertySpec::clique(s),
        seed.with_stream(seed.stream_id + static_cast<std::uint64_t>(r)), n_max);
    stats.hit_times[static_cast<std::size_t>(r)] = out.n;
    if (out.saturated) return;  // no clique reached: contributes no members
    const CliqueMembership members = clique_members(out.family, s);
    stats.member_dims[static_cast<std::size_t>(r)] = members.member_dimensions;
  });

  // Aggregate in run order so the floating-point reduction is deterministic.
  std::vector<double> fractions;
  for (int r = 0; r < runs; ++r)
    for (int dim : stats.member_dims[static_cast<std::size_t>(r)])
      fractions.push_back(static_cast<double>(dim) / stats.d);
  stats.member_count = static_cast<std::int64_t>(fractions.size());
  if (!fractions.empty()) {
    double sum = 0.0;
    for (double f : fractions) sum += f;
    stats.mean_dim_fraction = sum / static_cast<double>(fractions.size());
    stats.stdev_dim_fraction = stdev_of(fractions, stats.mean_dim_fraction);
  }
  return stats;
}

QuasirandomnessReport quasirandomness_report(int d, double epsilon, int n, int trials,
                                             SeedSpec seed, int threads) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("quasirandomness_report: epsilon must be in [0,1]");
  if (n < 4) throw std::invalid_argument("quasirandomness_report: need n >= 4");
  if (trials < 1) throw std::invalid_argument("quasirandomness_report: trials must be >= 1");

  QuasirandomnessReport rep;
  rep.d = d;
  rep.epsilon = epsilon;
  rep.n = n;
  rep.trials = trials;
  const double p = 1.0 - epsilon;
  const double nn = n;
  rep.expected_edges = nn * (nn - 1.0) / 2.0 * theory::binomial_edge_prob(d, p);
  rep.expected_c4 = nn * (nn - 1.0) * (nn - 2.0) * (nn - 3.0) / 8.0 * theory::c4_prob(d, p);
  rep.edges.assign(static_cast<std::size_t>(trials), 0);
  rep.c4.assign(static_cast<std::size_t>(trials), 0);

  parallel_for(trials, threads, [&](int t) {
    const FeatureFamily family =
        sample_family(ModelParams::binomial(d, p), static_cast<std::uint64_t>(n),
                      seed.with_stream(seed.stream_id + static_cast<std::uint64_t>(t)));
    const IntersectionGraph g = build_graph(family);
    rep.edges[static_cast<std::size_t>(t)] = edge_count(g);
    rep.c4[static_cast<std::size_t>(t)] = count_c4(g);
  });

  double edge_mean = 0.0, c4_mean = 0.0;
  for (int t = 0; t < trials; ++t) {
    edge_mean += static_cast<double>(rep.edges[static_cast<std::size_t>(t)]);
    c4_mean += static_cast<double>(rep.c4[static_cast<std::size_t>(t)]);
  }
  edge_mean /= trials;
  c4_mean /= trials;
  rep.mean_edge_rel_err = (edge_mean - rep.expected_edges) / rep.expected_edges;
  rep.mean_c4_rel_err = (c4_mean - rep.expected_c4) / rep.expected_c4;
  return rep;
}

}  // namespace rsig
