#pragma once

// JSON records for analysis and experiment results. Header-only; needs
// nlohmann/json on the include path (vendored as json.hpp).

#include <json.hpp>

#include "rsig/analysis.hpp"
#include "rsig/experiments.hpp"

namespace rsig {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const DepthWitness& w) {
  return {{"depth", w.depth}, {"witness", w.witness.to_string()}};
}

inline ordered_json to_json(const CliqueMembership& m) {
  return {{"s", m.s}, {"members", m.members}, {"member_dimensions", m.member_dimensions}};
}

inline ordered_json to_json(const TrialStats& ts) {
  return {{"estimate", ts.estimate}, {"ci_low", ts.ci_low},       {"ci_high", ts.ci_high},
          {"trials", ts.trials},     {"successes", ts.successes}};
}

inline ordered_json to_json(const ScanPoint& p) {
  ordered_json j = to_json(p.stats);
  j["x"] = p.x;
  j["n"] = p.n;
  return j;
}

inline ordered_json to_json(const ScanResult& r) {
  ordered_json points = ordered_json::array();
  for (const ScanPoint& p : r.points) points.push_back(to_json(p));
  ordered_json j;
  j["points"] = std::move(points);
  if (r.midpoint)
    j["observed_midpoint"] = *r.midpoint;
  else
    j["observed_midpoint"] = nullptr;
  j["monotone_ok"] = r.monotone_ok;
  return j;
}

inline ordered_json to_json(const HittingEnsemble& e) {
  ordered_json j;
  j["samples"] = e.samples;
  j["saturated"] = e.saturated;
  j["normalized"] = e.normalized;
  j["mean"] = e.mean;
  j["stdev"] = e.stdev;
  j["saturation_rate"] = e.saturation_rate;
  j["config_ok"] = e.config_ok;
  return j;
}

inline ordered_json to_json(const DimensionStats& s) {
  ordered_json j;
  j["s"] = s.s;
  j["d"] = s.d;
  j["runs"] = s.runs;
  j["hit_times"] = s.hit_times;
  j["member_dims"] = s.member_dims;
  j["mean_dim_fraction"] = s.mean_dim_fraction;
  j["stdev_dim_fraction"] = s.stdev_dim_fraction;
  j["member_count"] = s.member_count;
  return j;
}

inline ordered_json to_json(const QuasirandomnessReport& r) {
  ordered_json j;
  j["d"] = r.d;
  j["epsilon"] = r.epsilon;
  j["n"] = r.n;
  j["trials"] = r.trials;
  j["expected_edges"] = r.expected_edges;
  j["expected_c4"] = r.expected_c4;
  j["edges"] = r.edges;
  j["c4"] = r.c4;
  j["mean_edge_rel_err"] = r.mean_edge_rel_err;
  j["mean_c4_rel_err"] = r.mean_c4_rel_err;
  return j;
}

}  // namespace rsig
