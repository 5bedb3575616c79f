// rsig: sampling, exact analysis and Monte Carlo experiments for random
// subcube intersection graphs on the hypercube.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rsig/experiments.hpp"
#include "rsig/graph.hpp"
#include "rsig/json_io.hpp"
#include "rsig/oracle.hpp"
#include "rsig/theory.hpp"
#include "rsig/version.hpp"

namespace {

using rsig::ordered_json;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string iso_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// Collects the output files of one command and drops a manifest next to the
// first one. Hashes cover file contents only, so re-running the same
// configuration reproduces them bit for bit; timestamps live only in the
// manifest itself.
class RunContext {
 public:
  RunContext(std::string command, std::uint64_t master_seed)
      : command_(std::move(command)),
        master_seed_(master_seed),
        start_(std::chrono::system_clock::now()) {}

  void echo(const std::string& key, const ordered_json& value) { config_[key] = value; }

  void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    out.close();
    ordered_json entry;
    entry["path"] = path;
    entry["bytes"] = content.size();
    entry["sha256"] = sha256_hex(content);
    outputs_.push_back(std::move(entry));
  }

  // Writes to `path`, or stdout when no path was given.
  void emit(const std::string& path, const std::string& content) {
    if (path.empty())
      std::cout << content;
    else
      write_file(path, content);
  }

  void finish() {
    if (outputs_.empty()) return;
    ordered_json manifest;
    manifest["command"] = command_;
    manifest["version"] = rsig::kVersion;
    manifest["config"] = config_;
    manifest["master_seed"] = master_seed_;
    manifest["started_at"] = iso_timestamp(start_);
    manifest["finished_at"] = iso_timestamp(std::chrono::system_clock::now());
    manifest["outputs"] = outputs_;
    const std::string path = outputs_.front()["path"].get<std::string>() + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  ordered_json config_;
  std::uint64_t master_seed_;
  std::chrono::system_clock::time_point start_;
  ordered_json outputs_ = ordered_json::array();
};

struct ModelOptions {
  std::string model;
  int d = 0;
  double p = -1.0;
  int k = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "model: binomial or uniform")
        ->check(CLI::IsMember({"binomial", "uniform"}))
        ->required();
    cmd->add_option("--d", d, "ambient dimension")->required();
    cmd->add_option("--p", p, "binomial star probability");
    cmd->add_option("--k", k, "uniform subcube dimension");
  }

  rsig::ModelParams params() const {
    if (model == "binomial") {
      if (p < 0.0) throw std::invalid_argument("--p is required for the binomial model");
      return rsig::ModelParams::binomial(d, p);
    }
    if (k < 0) throw std::invalid_argument("--k is required for the uniform model");
    return rsig::ModelParams::uniform(d, k);
  }

  ordered_json echo() const {
    ordered_json j;
    j["model"] = model;
    j["d"] = d;
    if (model == "binomial") j["p"] = p;
    if (model == "uniform") j["k"] = k;
    return j;
  }
};

rsig::PropertySpec parse_property(const std::string& text) {
  if (text == "cover") return rsig::PropertySpec::cover();
  if (text.rfind("clique:", 0) == 0) return rsig::PropertySpec::clique(std::stoi(text.substr(7)));
  throw std::invalid_argument("--property must be 'cover' or 'clique:<s>'");
}

// "2..5" or a single "3".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int s = std::stoi(text);
    return {s, s};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

std::string csv_of_scan(const rsig::ScanResult& scan) {
  std::ostringstream csv;
  csv << "x,n,trials,successes,estimate,ci_low,ci_high\n";
  for (const rsig::ScanPoint& pt : scan.points) {
    csv << fmt_double(pt.x) << ',' << pt.n << ',' << pt.stats.trials << ','
        << pt.stats.successes << ',' << fmt_double(pt.stats.estimate) << ','
        << fmt_double(pt.stats.ci_low) << ',' << fmt_double(pt.stats.ci_high) << '\n';
  }
  return csv.str();
}

double predicted_threshold(const rsig::ModelParams& model, const rsig::PropertySpec& property) {
  const bool binomial = model.is_binomial();
  const double alpha =
      binomial ? 0.0 : static_cast<double>(model.as_uniform().k) / model.as_uniform().d;
  if (property.kind == rsig::PropertySpec::Kind::kCover)
    return binomial ? rsig::theory::t_cover_binomial(model.as_binomial().p)
                    : rsig::theory::t_cover_uniform(alpha);
  return binomial ? rsig::theory::t_ks_binomial(property.s, model.as_binomial().p)
                  : rsig::theory::t_ks_uniform(alpha, property.s);
}

int selftest_main(std::uint64_t master_seed, bool quick) {
  using namespace rsig;
  int failures = 0;
  const auto report = [&](const char* name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << '\n';
    if (!ok) ++failures;
  };

  // Clique number via coverage depth against Bron-Kerbosch.
  {
    const int instances = quick ? 80 : 400;
    int mismatches = 0;
    for (int i = 0; i < instances; ++i) {
      Rng rng(SeedSpec{master_seed, static_cast<std::uint64_t>(i)});
      const int d = 1 + static_cast<int>(rng.next_below(10));
      const int n = 1 + static_cast<int>(rng.next_below(30));
      const ModelParams params =
          (i % 2) ? ModelParams::binomial(d, rng.next_u01())
                  : ModelParams::uniform(d, static_cast<int>(rng.next_below(d + 1)));
      const FeatureFamily f = sample_family(
          params, n, SeedSpec{master_seed ^ 0x5eed, static_cast<std::uint64_t>(i)});
      if (clique_number(f) != bron_kerbosch_max_clique(build_graph(f))) ++mismatches;
    }
    report("clique number vs Bron-Kerbosch", mismatches == 0,
           std::to_string(instances) + " instances");
  }

  // Recursive counts against exhaustive point scans.
  {
    const int instances = quick ? 60 : 300;
    int mismatches = 0;
    for (int i = 0; i < instances; ++i) {
      Rng rng(SeedSpec{master_seed, 1000 + static_cast<std::uint64_t>(i)});
      const int d = 1 + static_cast<int>(rng.next_below(12));
      const int n = static_cast<int>(rng.next_below(50));
      const FeatureFamily f =
          sample_family(ModelParams::binomial(d, rng.next_u01()), n,
                        SeedSpec{master_seed ^ 0xc0de, static_cast<std::uint64_t>(i)});
      if (!(uncovered_count(f) == oracle::uncovered_by_point_scan(f))) ++mismatches;
      if (max_coverage_depth(f).depth != oracle::depth_by_point_scan(f).depth) ++mismatches;
      if (is_cover(f) != (oracle::uncovered_by_point_scan(f) == 0)) ++mismatches;
    }
    report("recursive counts vs point scans", mismatches == 0,
           std::to_string(instances) + " instances");
  }

  // Closed-form uniform edge probability against enumeration.
  {
    const int dmax = quick ? 6 : 8;
    double worst = 0.0;
    for (int d = 0; d <= dmax; ++d)
      for (int k = 0; k <= d; ++k)
        worst = std::max(worst, std::abs(theory::exact_uniform_edge_prob(d, k) -
                                         oracle::uniform_edge_prob_by_enumeration(d, k)));
    report("uniform edge probability vs enumeration", worst < 1e-12,
           "max abs error " + fmt_double(worst));
  }

  // Product inequality grid.
  {
    double min_gap = 0.0, worst_end = 0.0;
    for (int s = 0; s <= 30; ++s)
      for (int i = 0; i <= s; ++i)
        for (int yi = 0; yi <= 100; ++yi) {
          const double gap = theory::lemma_a_gap(yi / 100.0, i, s);
          min_gap = std::min(min_gap, gap);
          if (i == 0 || i == s) worst_end = std::max(worst_end, std::abs(gap));
        }
    report("product inequality grid", min_gap >= -1e-9 && worst_end <= 1e-9,
           "min gap " + fmt_double(min_gap));
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random subcube intersection graphs: sampling, exact analysis, experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file (flags take precedence)");
  app.set_version_flag("--version", std::string(rsig::kVersion));

  std::string out_path, format = "json", in_path, property_text;
  std::uint64_t seed = 0, stream = 0;
  int threads = 0;

  auto* gen = app.add_subcommand("gen", "sample a family and write the text format");
  ModelOptions gen_model;
  gen_model.attach(gen);
  std::uint64_t gen_n = 0;
  gen->add_option("--n", gen_n, "number of subcubes")->required();
  gen->add_option("--seed", seed, "master seed")->required();
  gen->add_option("--stream", stream, "stream id (default 0)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* graph_cmd = app.add_subcommand("graph", "family -> edge list (u v per line, u < v)");
  graph_cmd->add_option("--in", in_path, "family file")->required();
  graph_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* clique_cmd = app.add_subcommand("clique", "family -> clique number and witness point");
  clique_cmd->add_option("--in", in_path, "family file")->required();
  clique_cmd->add_option("--out", out_path, "output file (default stdout)");
  clique_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* cover_cmd = app.add_subcommand("cover", "family -> exact uncovered count");
  cover_cmd->add_option("--in", in_path, "family file")->required();
  cover_cmd->add_option("--out", out_path, "output file (default stdout)");
  cover_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* thr = app.add_subcommand("thresholds", "closed-form threshold table");
  std::string thr_model = "binomial", thr_s = "2..5";
  double thr_p = -1.0, thr_alpha = -1.0;
  thr->add_option("--model", thr_model, "binomial or uniform")
      ->check(CLI::IsMember({"binomial", "uniform"}));
  thr->add_option("--p", thr_p, "binomial star probability");
  thr->add_option("--alpha", thr_alpha, "uniform dimension fraction");
  thr->add_option("--s", thr_s, "clique size or range, e.g. 3 or 2..5");
  thr->add_option("--out", out_path, "output file (default stdout)");
  thr->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  thr->get_option("--format")->default_str("csv");

  auto* scan_cmd = app.add_subcommand("scan", "Monte Carlo threshold transition scan");
  ModelOptions scan_model;
  scan_model.attach(scan_cmd);
  double x_min = 0.0, x_max = 0.0, x_step = 0.01, budget = 0.0;
  int trials = 200;
  std::uint64_t n_cap = 50'000'000;
  bool fast_sampler = false;
  scan_cmd->add_option("--property", property_text, "cover or clique:<s>")->required();
  scan_cmd->add_option("--x-min", x_min, "grid start")->required();
  scan_cmd->add_option("--x-max", x_max, "grid end")->required();
  scan_cmd->add_option("--x-step", x_step, "grid step (default 0.01)");
  scan_cmd->add_option("--trials", trials, "trials per grid point");
  scan_cmd->add_option("--seed", seed, "master seed")->required();
  scan_cmd->add_option("--stream", stream, "base stream id");
  scan_cmd->add_option("--n-cap", n_cap, "refuse grids whose n exceeds this cap");
  scan_cmd->add_option("--threads", threads, "worker threads (default: hardware)");
  scan_cmd->add_option("--budget", budget, "wall-clock budget in seconds (0 = unlimited)");
  scan_cmd->add_flag("--fast-sampler", fast_sampler, "word-parallel binomial sampling");
  scan_cmd->add_option("--out", out_path,
                       "CSV output file; a .summary.json is written next to it");

  auto* hit_cmd = app.add_subcommand("hit", "hitting-time ensemble");
  ModelOptions hit_model;
  hit_model.attach(hit_cmd);
  int runs = 100;
  std::uint64_t n_max = 1'000'000;
  hit_cmd->add_option("--property", property_text, "cover or clique:<s>")->required();
  hit_cmd->add_option("--runs", runs, "independent runs");
  hit_cmd->add_option("--seed", seed, "master seed")->required();
  hit_cmd->add_option("--stream", stream, "base stream id");
  hit_cmd->add_option("--n-max", n_max, "saturation cap");
  hit_cmd->add_option("--threads", threads, "worker threads");
  hit_cmd->add_option("--out", out_path, "output file (default stdout)");
  hit_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* dims_cmd = app.add_subcommand("dims", "clique-member dimensions at the hitting time");
  ModelOptions dims_model;
  dims_model.attach(dims_cmd);
  int dims_s = 2;
  dims_cmd->add_option("--s", dims_s, "clique size")->required();
  dims_cmd->add_option("--runs", runs, "independent runs");
  dims_cmd->add_option("--seed", seed, "master seed")->required();
  dims_cmd->add_option("--stream", stream, "base stream id");
  dims_cmd->add_option("--n-max", n_max, "saturation cap");
  dims_cmd->add_option("--threads", threads, "worker threads");
  dims_cmd->add_option("--out", out_path, "output file (default stdout)");
  dims_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* quasi_cmd = app.add_subcommand("quasi", "edge and 4-cycle counts vs predictions");
  int q_d = 64, q_n = 2000, q_trials = 1;
  double q_eps = 0.125;
  quasi_cmd->add_option("--d", q_d, "ambient dimension")->required();
  quasi_cmd->add_option("--epsilon", q_eps, "p = 1 - epsilon")->required();
  quasi_cmd->add_option("--n", q_n, "vertices")->required();
  quasi_cmd->add_option("--trials", q_trials, "independent graphs");
  quasi_cmd->add_option("--seed", seed, "master seed")->required();
  quasi_cmd->add_option("--stream", stream, "base stream id");
  quasi_cmd->add_option("--threads", threads, "worker threads");
  quasi_cmd->add_option("--out", out_path, "output file (default stdout)");
  quasi_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* self_cmd = app.add_subcommand("selftest", "run the oracle cross-check suite");
  bool quick = false;
  self_cmd->add_option("--seed", seed, "master seed")->required();
  self_cmd->add_flag("--quick", quick, "smaller instance counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (gen->parsed()) {
      RunContext ctx("gen", seed);
      ctx.echo("model", gen_model.echo());
      ctx.echo("n", gen_n);
      ctx.echo("seed", seed);
      ctx.echo("stream", stream);
      const rsig::FeatureFamily family =
          rsig::sample_family(gen_model.params(), gen_n, rsig::SeedSpec{seed, stream});
      std::ostringstream text;
      rsig::save_family(family, text);
      ctx.emit(out_path, text.str());
      ctx.finish();
      return 0;
    }

    if (graph_cmd->parsed()) {
      RunContext ctx("graph", 0);
      ctx.echo("in", in_path);
      const rsig::FeatureFamily family = rsig::load_family(in_path);
      std::ostringstream text;
      rsig::write_edge_list(rsig::build_graph(family), text);
      ctx.emit(out_path, text.str());
      ctx.finish();
      return 0;
    }

    if (clique_cmd->parsed()) {
      RunContext ctx("clique", 0);
      ctx.echo("in", in_path);
      const rsig::FeatureFamily family = rsig::load_family(in_path);
      const rsig::DepthWitness w = rsig::max_coverage_depth(family);
      std::string text;
      if (format == "csv") {
        text = "clique_number,witness\n" + std::to_string(w.depth) + "," +
               w.witness.to_string() + "\n";
      } else {
        ordered_json j;
        j["clique_number"] = w.depth;  // equals the max coverage depth (Helly)
        j["witness"] = w.witness.to_string();
        text = j.dump(2) + "\n";
      }
      ctx.emit(out_path, text);
      ctx.finish();
      return 0;
    }

    if (cover_cmd->parsed()) {
      RunContext ctx("cover", 0);
      ctx.echo("in", in_path);
      const rsig::FeatureFamily family = rsig::load_family(in_path);
      const rsig::UBig uncovered = rsig::uncovered_count(family);
      std::string text;
      if (format == "csv") {
        text = "uncovered,is_cover\n" + uncovered.to_string() + "," +
               (uncovered.is_zero() ? "true" : "false") + "\n";
      } else {
        ordered_json j;
        j["uncovered"] = uncovered.to_string();
        j["is_cover"] = uncovered.is_zero();
        text = j.dump(2) + "\n";
      }
      ctx.emit(out_path, text);
      ctx.finish();
      return 0;
    }

    if (thr->parsed()) {
      RunContext ctx("thresholds", 0);
      const auto [s_lo, s_hi] = parse_range(thr_s);
      if (s_lo < 1 || s_hi < s_lo) throw std::invalid_argument("bad --s range");
      const bool binomial = thr_model == "binomial";
      if (binomial && thr_p < 0.0) throw std::invalid_argument("--p is required for binomial");
      if (!binomial && thr_alpha < 0.0)
        throw std::invalid_argument("--alpha is required for uniform");
      ctx.echo("model", thr_model);
      ctx.echo("p_or_alpha", binomial ? thr_p : thr_alpha);
      ctx.echo("s", thr_s);
      ordered_json rows = ordered_json::array();
      std::ostringstream csv;
      csv << "model,s,p_or_alpha,t_Ks,t_cover,alpha_s\n";
      for (int s = s_lo; s <= s_hi; ++s) {
        const double t_ks = binomial ? rsig::theory::t_ks_binomial(s, thr_p)
                                     : rsig::theory::t_ks_uniform(thr_alpha, s);
        const double t_cover = binomial ? rsig::theory::t_cover_binomial(thr_p)
                                        : rsig::theory::t_cover_uniform(thr_alpha);
        // For uniform rows this column carries the conjugate binomial p.
        const double alpha = binomial ? rsig::theory::alpha_s(thr_p, s)
                                      : rsig::theory::alpha_s_inverse(thr_alpha, s);
        csv << thr_model << ',' << s << ',' << fmt_double(binomial ? thr_p : thr_alpha) << ','
            << fmt_double(t_ks) << ',' << fmt_double(t_cover) << ',' << fmt_double(alpha)
            << '\n';
        ordered_json row;
        row["model"] = thr_model;
        row["s"] = s;
        row["p_or_alpha"] = binomial ? thr_p : thr_alpha;
        row["t_Ks"] = t_ks;
        row["t_cover"] = t_cover;
        row["alpha_s"] = alpha;
        rows.push_back(std::move(row));
      }
      ctx.emit(out_path, format == "json" ? rows.dump(2) + "\n" : csv.str());
      ctx.finish();
      return 0;
    }

    if (scan_cmd->parsed()) {
      RunContext ctx("scan", seed);
      rsig::ExperimentConfig config;
      config.model = scan_model.params();
      config.property = parse_property(property_text);
      config.trials = trials;
      config.seed = {seed, stream};
      config.n_cap = n_cap;
      config.threads = threads;
      config.time_budget_s = budget;
      config.fast_sampler = fast_sampler;
      for (double x = x_min; x <= x_max + 1e-12; x += x_step) config.x_grid.push_back(x);
      ctx.echo("model", scan_model.echo());
      ctx.echo("property", property_text);
      ctx.echo("x_min", x_min);
      ctx.echo("x_max", x_max);
      ctx.echo("x_step", x_step);
      ctx.echo("trials", trials);
      ctx.echo("seed", seed);
      ctx.echo("stream", stream);
      ctx.echo("n_cap", n_cap);
      ctx.echo("fast_sampler", fast_sampler);

      const rsig::ScanResult scan = rsig::threshold_scan(config);

      ordered_json summary;
      summary["predicted_threshold"] = predicted_threshold(config.model, config.property);
      summary.update(rsig::to_json(scan));

      if (out_path.empty()) {
        std::cout << summary.dump(2) << "\n";
      } else {
        ctx.write_file(out_path, csv_of_scan(scan));
        ctx.write_file(out_path + ".summary.json", summary.dump(2) + "\n");
      }
      ctx.finish();
      if (!scan.monotone_ok) {
        std::cerr << "scan: estimates decrease beyond CI noise along the grid\n";
        return 1;
      }
      return 0;
    }

    if (hit_cmd->parsed()) {
      RunContext ctx("hit", seed);
      ctx.echo("model", hit_model.echo());
      ctx.echo("property", property_text);
      ctx.echo("runs", runs);
      ctx.echo("seed", seed);
      ctx.echo("stream", stream);
      ctx.echo("n_max", n_max);
      const rsig::HittingEnsemble ens =
          rsig::hitting_ensemble(hit_model.params(), parse_property(property_text), runs,
                                 {seed, stream}, n_max, threads);
      std::string text;
      if (format == "csv") {
        std::ostringstream csv;
        csv << "run,n,saturated\n";
        for (std::size_t r = 0; r < ens.samples.size(); ++r)
          csv << r << ',' << ens.samples[r] << ',' << int{ens.saturated[r]} << '\n';
        text = csv.str();
      } else {
        text = rsig::to_json(ens).dump(2) + "\n";
      }
      ctx.emit(out_path, text);
      ctx.finish();
      if (!ens.config_ok) {
        std::cerr << "hit: saturation rate " << ens.saturation_rate
                  << " exceeds 5%; raise --n-max\n";
        return 1;
      }
      return 0;
    }

    if (dims_cmd->parsed()) {
      RunContext ctx("dims", seed);
      ctx.echo("model", dims_model.echo());
      ctx.echo("s", dims_s);
      ctx.echo("runs", runs);
      ctx.echo("seed", seed);
      ctx.echo("stream", stream);
      ctx.echo("n_max", n_max);
      const rsig::DimensionStats stats = rsig::dimension_at_hitting(
          dims_s, dims_model.params(), runs, {seed, stream}, n_max, threads);
      std::string text;
      if (format == "csv") {
        std::ostringstream csv;
        csv << "run,n_hit,dim\n";
        for (std::size_t r = 0; r < stats.member_dims.size(); ++r)
          for (int dim : stats.member_dims[r]) csv << r << ',' << stats.hit_times[r] << ',' << dim << '\n';
        text = csv.str();
      } else {
        text = rsig::to_json(stats).dump(2) + "\n";
      }
      ctx.emit(out_path, text);
      ctx.finish();
      return 0;
    }

    if (quasi_cmd->parsed()) {
      RunContext ctx("quasi", seed);
      if (q_eps != 0.0) {
        const double e2d = q_eps * q_eps * q_d;
        if (e2d < 0.25 || e2d > 4.0)
          throw std::invalid_argument("quasi: epsilon^2 * d = " + fmt_double(e2d) +
                                      " is outside [0.25, 4]");
      }
      ctx.echo("d", q_d);
      ctx.echo("epsilon", q_eps);
      ctx.echo("n", q_n);
      ctx.echo("trials", q_trials);
      ctx.echo("seed", seed);
      const rsig::QuasirandomnessReport rep =
          rsig::quasirandomness_report(q_d, q_eps, q_n, q_trials, {seed, stream}, threads);
      std::string text;
      if (format == "csv") {
        std::ostringstream csv;
        csv << "trial,edges,expected_edges,c4,expected_c4\n";
        for (int t = 0; t < q_trials; ++t)
          csv << t << ',' << rep.edges[static_cast<std::size_t>(t)] << ','
              << fmt_double(rep.expected_edges) << ',' << rep.c4[static_cast<std::size_t>(t)]
              << ',' << fmt_double(rep.expected_c4) << '\n';
        text = csv.str();
      } else {
        text = rsig::to_json(rep).dump(2) + "\n";
      }
      ctx.emit(out_path, text);
      ctx.finish();
      return 0;
    }

    if (self_cmd->parsed()) return selftest_main(seed, quick);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
