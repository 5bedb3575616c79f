#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsig/experiments.hpp"
#include "rsig/graph.hpp"
#include "rsig/oracle.hpp"
#include "rsig/theory.hpp"
#include "rsig/version.hpp"

namespace py = pybind11;
using namespace rsig;

namespace {

PropertySpec property_from(const std::string& text) {
  if (text == "cover") return PropertySpec::cover();
  if (text.rfind("clique:", 0) == 0) return PropertySpec::clique(std::stoi(text.substr(7)));
  throw std::invalid_argument("property must be 'cover' or 'clique:<s>'");
}

py::object big_to_int(const UBig& v) {
  return py::module_::import("builtins").attr("int")(v.to_string());
}

py::dict stats_dict(const TrialStats& ts) {
  py::dict d;
  d["estimate"] = ts.estimate;
  d["ci_low"] = ts.ci_low;
  d["ci_high"] = ts.ci_high;
  d["trials"] = ts.trials;
  d["successes"] = ts.successes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random subcube intersection graphs: exact analysis and Monte Carlo experiments";
  m.attr("__version__") = kVersion;

  py::class_<PointQd>(m, "Point")
      .def_static("parse", &PointQd::parse, py::arg("text"))
      .def("__str__", &PointQd::to_string)
      .def("__repr__", [](const PointQd& p) { return "Point('" + p.to_string() + "')"; })
      .def_property_readonly("d", &PointQd::d)
      .def(py::self == py::self);

  py::class_<Subcube>(m, "Subcube")
      .def(py::init([](const std::string& text) { return Subcube::parse(text); }),
           py::arg("text"))
      .def_static("full", [](int d) { return Subcube(d); }, py::arg("d"))
      .def("__str__", &Subcube::to_string)
      .def("__repr__", [](const Subcube& s) { return "Subcube('" + s.to_string() + "')"; })
      .def_property_readonly("d", &Subcube::d)
      .def_property_readonly("dimension", &Subcube::dimension)
      .def("volume_log2", &Subcube::volume_log2)
      .def(py::self == py::self);

  m.def("intersects", &intersects, py::arg("a"), py::arg("b"));
  m.def(
      "intersection",
      [](const Subcube& a, const Subcube& b) -> py::object {
        const auto meet = intersection(a, b);
        return meet ? py::cast(*meet) : py::none();
      },
      py::arg("a"), py::arg("b"));
  m.def("contains_point", &contains_point, py::arg("subcube"), py::arg("point"));
  m.def(
      "restrict",
      [](const Subcube& a, int coord, bool bit) -> py::object {
        const auto r = restrict(a, coord, bit);
        return r ? py::cast(*r) : py::none();
      },
      py::arg("subcube"), py::arg("coord"), py::arg("bit"));
  m.def("hamming_distance", &hamming_distance, py::arg("y"), py::arg("z"));

  py::class_<SeedSpec>(m, "Seed")
      .def(py::init([](std::uint64_t master, std::uint64_t stream) {
             return SeedSpec{master, stream};
           }),
           py::arg("master"), py::arg("stream") = 0)
      .def_readwrite("master", &SeedSpec::master_seed)
      .def_readwrite("stream", &SeedSpec::stream_id);

  py::class_<ModelParams>(m, "Model")
      .def_static("binomial", &ModelParams::binomial, py::arg("d"), py::arg("p"))
      .def_static("uniform", &ModelParams::uniform, py::arg("d"), py::arg("k"))
      .def_property_readonly("d", &ModelParams::d)
      .def("__repr__", &ModelParams::describe);

  py::class_<FeatureFamily>(m, "Family")
      .def(py::init([](int d, const std::vector<std::string>& rows) {
             FeatureFamily f;
             f.d = d;
             for (const std::string& row : rows) {
               Subcube s = Subcube::parse(row);
               if (s.d() != d) throw std::invalid_argument("row length does not match d");
               f.subcubes.push_back(std::move(s));
             }
             return f;
           }),
           py::arg("d"), py::arg("rows"))
      .def_property_readonly("d", [](const FeatureFamily& f) { return f.d; })
      .def("__len__", &FeatureFamily::size)
      .def("__getitem__",
           [](const FeatureFamily& f, int i) {
             if (i < 0) i += f.size();
             if (i < 0 || i >= f.size()) throw py::index_error();
             return f.subcubes[static_cast<std::size_t>(i)];
           })
      .def("rows",
           [](const FeatureFamily& f) {
             std::vector<std::string> rows;
             rows.reserve(f.subcubes.size());
             for (const Subcube& s : f.subcubes) rows.push_back(s.to_string());
             return rows;
           })
      .def("save", [](const FeatureFamily& f, const std::string& path) { save_family(f, path); },
           py::arg("path"))
      .def_static("load", [](const std::string& path) { return load_family(path); },
                  py::arg("path"));

  m.def("sample_family", &sample_family, py::arg("model"), py::arg("n"), py::arg("seed"));

  // Graph operations.
  m.def(
      "edges",
      [](const FeatureFamily& f) {
        const IntersectionGraph g = build_graph(f);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < g.n(); ++u)
          for (int v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v)) edges.emplace_back(u, v);
        return edges;
      },
      py::arg("family"));
  m.def(
      "edge_count",
      [](const FeatureFamily& f) { return edge_count(build_graph(f)); }, py::arg("family"));
  m.def(
      "count_c4", [](const FeatureFamily& f) { return count_c4(build_graph(f)); },
      py::arg("family"));
  m.def(
      "bron_kerbosch_max_clique",
      [](const FeatureFamily& f, int limit) {
        return bron_kerbosch_max_clique(build_graph(f), limit);
      },
      py::arg("family"), py::arg("limit") = 64);

  // Exact analysis.
  m.def(
      "max_coverage_depth",
      [](const FeatureFamily& f) {
        const DepthWitness w = max_coverage_depth(f);
        return py::make_tuple(w.depth, w.witness.to_string());
      },
      py::arg("family"));
  m.def("clique_number", &clique_number, py::arg("family"));
  m.def(
      "clique_members",
      [](const FeatureFamily& f, int s) {
        const CliqueMembership cm = clique_members(f, s);
        py::dict d;
        d["s"] = cm.s;
        d["members"] = cm.members;
        d["member_dimensions"] = cm.member_dimensions;
        return d;
      },
      py::arg("family"), py::arg("s"));
  m.def(
      "uncovered_count",
      [](const FeatureFamily& f) { return big_to_int(uncovered_count(f)); }, py::arg("family"));
  m.def(
      "is_cover", [](const FeatureFamily& f) { return is_cover(f); }, py::arg("family"));
  m.def(
      "hitting_time",
      [](const ModelParams& model, const std::string& property, const SeedSpec& seed,
         std::uint64_t n_max) {
        bool saturated = false;
        const std::uint64_t n = hitting_time(model, property_from(property), seed, n_max,
                                             &saturated);
        py::dict d;
        d["n"] = n;
        d["saturated"] = saturated;
        return d;
      },
      py::arg("model"), py::arg("property"), py::arg("seed"), py::arg("n_max") = 1'000'000);

  // Closed forms.
  auto th = m.def_submodule("theory", "closed-form thresholds and probabilities");
  th.def("clique_prob_binomial", &theory::clique_prob_binomial, py::arg("s"), py::arg("d"),
         py::arg("p"));
  th.def("t_ks_binomial", &theory::t_ks_binomial, py::arg("s"), py::arg("p"));
  th.def("joint_clique_prob", &theory::joint_clique_prob, py::arg("s"), py::arg("i"),
         py::arg("d"), py::arg("p"));
  th.def("t_cover_binomial", &theory::t_cover_binomial, py::arg("p"));
  th.def("t_cover_uniform", &theory::t_cover_uniform, py::arg("alpha"));
  th.def("alpha_s", &theory::alpha_s, py::arg("p"), py::arg("s"));
  th.def("alpha_s_inverse", &theory::alpha_s_inverse, py::arg("alpha"), py::arg("s"));
  th.def("t_alpha_ks", &theory::t_alpha_ks, py::arg("alpha"), py::arg("p"), py::arg("s"));
  th.def("t_ks_uniform", &theory::t_ks_uniform, py::arg("alpha"), py::arg("s"));
  th.def("f_alpha", &theory::f_alpha, py::arg("alpha"));
  th.def("exact_uniform_edge_prob", &theory::exact_uniform_edge_prob, py::arg("d"), py::arg("k"));
  th.def("binomial_edge_prob", &theory::binomial_edge_prob, py::arg("d"), py::arg("p"));
  th.def("c4_prob", &theory::c4_prob, py::arg("d"), py::arg("p"));
  th.def("expected_uncovered_binomial", &theory::expected_uncovered_binomial, py::arg("n"),
         py::arg("d"), py::arg("p"));
  th.def("pair_uncovered_prob_binomial", &theory::pair_uncovered_prob_binomial, py::arg("n"),
         py::arg("d"), py::arg("p"), py::arg("i"));
  th.def("expected_uncovered_uniform", &theory::expected_uncovered_uniform, py::arg("n"),
         py::arg("d"), py::arg("k"));
  th.def("pair_uncovered_prob_uniform", &theory::pair_uncovered_prob_uniform, py::arg("n"),
         py::arg("d"), py::arg("k"), py::arg("i"));
  th.def("expected_volume", &theory::expected_volume, py::arg("d"), py::arg("p"));
  th.def("volume_variance", &theory::volume_variance, py::arg("n"), py::arg("d"), py::arg("p"));
  th.def("lemma_a_gap", &theory::lemma_a_gap, py::arg("y"), py::arg("i"), py::arg("s"));
  th.def(
      "clique_regime",
      [](double x, const ModelParams& model, int d) {
        const theory::Regime r = theory::clique_regime(x, model, d);
        py::dict out;
        switch (r.kind) {
          case theory::Regime::Kind::kFixed:
            out["kind"] = "fixed";
            out["s"] = r.s;
            break;
          case theory::Regime::Kind::kBoundary:
            out["kind"] = "boundary";
            out["s"] = r.s;
            break;
          case theory::Regime::Kind::kPolylog:
            out["kind"] = "polylog";
            out["gamma"] = r.value;
            break;
          case theory::Regime::Kind::kExponential:
            out["kind"] = "exponential";
            out["c"] = r.value;
            break;
        }
        return out;
      },
      py::arg("x"), py::arg("model"), py::arg("d") = 0);

  // Monte Carlo experiments.
  m.def(
      "estimate_probability",
      [](const ModelParams& model, const std::string& property, double x, int trials,
         const SeedSpec& seed, std::uint64_t n_cap, int threads, double budget,
         bool fast_sampler) {
        ExperimentConfig config;
        config.model = model;
        config.property = property_from(property);
        config.trials = trials;
        config.seed = seed;
        config.n_cap = n_cap;
        config.threads = threads;
        config.time_budget_s = budget;
        config.fast_sampler = fast_sampler;
        return stats_dict(estimate_probability(config, x));
      },
      py::arg("model"), py::arg("property"), py::arg("x"), py::arg("trials"), py::arg("seed"),
      py::arg("n_cap") = 50'000'000, py::arg("threads") = 0, py::arg("budget") = 0.0,
      py::arg("fast_sampler") = false);

  m.def(
      "threshold_scan",
      [](const ModelParams& model, const std::string& property, const std::vector<double>& x_grid,
         int trials, const SeedSpec& seed, std::uint64_t n_cap, int threads, double budget,
         bool fast_sampler) {
        ExperimentConfig config;
        config.model = model;
        config.property = property_from(property);
        config.x_grid = x_grid;
        config.trials = trials;
        config.seed = seed;
        config.n_cap = n_cap;
        config.threads = threads;
        config.time_budget_s = budget;
        config.fast_sampler = fast_sampler;
        const ScanResult scan = threshold_scan(config);
        py::list points;
        for (const ScanPoint& pt : scan.points) {
          py::dict d = stats_dict(pt.stats);
          d["x"] = pt.x;
          d["n"] = pt.n;
          points.append(d);
        }
        py::dict out;
        out["points"] = points;
        out["observed_midpoint"] = scan.midpoint ? py::cast(*scan.midpoint) : py::none();
        out["monotone_ok"] = scan.monotone_ok;
        return out;
      },
      py::arg("model"), py::arg("property"), py::arg("x_grid"), py::arg("trials"),
      py::arg("seed"), py::arg("n_cap") = 50'000'000, py::arg("threads") = 0,
      py::arg("budget") = 0.0, py::arg("fast_sampler") = false);

  m.def(
      "hitting_ensemble",
      [](const ModelParams& model, const std::string& property, int runs, const SeedSpec& seed,
         std::uint64_t n_max, int threads) {
        const HittingEnsemble e =
            hitting_ensemble(model, property_from(property), runs, seed, n_max, threads);
        py::dict out;
        out["samples"] = e.samples;
        out["normalized"] = e.normalized;
        out["mean"] = e.mean;
        out["stdev"] = e.stdev;
        out["saturation_rate"] = e.saturation_rate;
        out["config_ok"] = e.config_ok;
        return out;
      },
      py::arg("model"), py::arg("property"), py::arg("runs"), py::arg("seed"),
      py::arg("n_max") = 1'000'000, py::arg("threads") = 0);

  m.def(
      "dimension_at_hitting",
      [](int s, const ModelParams& model, int runs, const SeedSpec& seed, std::uint64_t n_max,
         int threads) {
        const DimensionStats st = dimension_at_hitting(s, model, runs, seed, n_max, threads);
        py::dict out;
        out["s"] = st.s;
        out["d"] = st.d;
        out["runs"] = st.runs;
        out["hit_times"] = st.hit_times;
        out["member_dims"] = st.member_dims;
        out["mean_dim_fraction"] = st.mean_dim_fraction;
        out["stdev_dim_fraction"] = st.stdev_dim_fraction;
        out["member_count"] = st.member_count;
        return out;
      },
      py::arg("s"), py::arg("model"), py::arg("runs"), py::arg("seed"),
      py::arg("n_max") = 1'000'000, py::arg("threads") = 0);

  m.def(
      "quasirandomness_report",
      [](int d, double epsilon, int n, int trials, const SeedSpec& seed, int threads) {
        const QuasirandomnessReport r =
            quasirandomness_report(d, epsilon, n, trials, seed, threads);
        py::dict out;
        out["d"] = r.d;
        out["epsilon"] = r.epsilon;
        out["n"] = r.n;
        out["trials"] = r.trials;
        out["expected_edges"] = r.expected_edges;
        out["expected_c4"] = r.expected_c4;
        out["edges"] = r.edges;
        out["c4"] = r.c4;
        out["mean_edge_rel_err"] = r.mean_edge_rel_err;
        out["mean_c4_rel_err"] = r.mean_c4_rel_err;
        return out;
      },
      py::arg("d"), py::arg("epsilon"), py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("threads") = 0);
}
