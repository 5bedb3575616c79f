#include "rsig/graph.hpp"

#include <sstream>

#include "doctest.h"
#include "rsig/analysis.hpp"
#include "rsig/oracle.hpp"

using namespace rsig;

namespace {

FeatureFamily family_of(int d, std::initializer_list<const char*> rows) {
  FeatureFamily f;
  f.d = d;
  for (const char* row : rows) f.subcubes.push_back(Subcube::parse(row));
  return f;
}

FeatureFamily complete_family(int d, int n) {
  FeatureFamily f;
  f.d = d;
  for (int i = 0; i < n; ++i) f.subcubes.push_back(Subcube(d));
  return f;
}

// Brute-force unordered 4-cycle count over all ordered quadruples.
std::int64_t c4_brute_force(const IntersectionGraph& g) {
  std::int64_t ordered = 0;
  const int n = g.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          if (a == b || a == c || a == e || b == c || b == e || c == e) continue;
          if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, e) && g.adjacent(e, a))
            ++ordered;
        }
  return ordered / 8;
}

}  // namespace

TEST_CASE("build_graph places edges exactly at intersections") {
  const FeatureFamily f = family_of(2, {"0*", "*0", "1*"});
  const IntersectionGraph g = build_graph(f);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_FALSE(g.adjacent(0, 0));
  CHECK(edge_count(g) == 2);
}

TEST_CASE("full cubes give the complete graph") {
  const IntersectionGraph g = build_graph(complete_family(5, 9));
  CHECK(edge_count(g) == 9 * 8 / 2);
  for (int u = 0; u < 9; ++u) {
    CHECK_FALSE(g.adjacent(u, u));
    CHECK(g.degree(u) == 8);
  }
}

TEST_CASE("adjacency agrees with the point-witness oracle") {
  const FeatureFamily f = sample_family(ModelParams::binomial(8, 0.5), 12, SeedSpec{31, 0});
  const IntersectionGraph g = build_graph(f);
  for (int u = 0; u < f.size(); ++u)
    for (int v = 0; v < f.size(); ++v) {
      const bool expected =
          u != v && oracle::intersects_by_point_scan(f.subcubes[u], f.subcubes[v]);
      CHECK(g.adjacent(u, v) == expected);
    }
}

TEST_CASE("edge_count on the empty graph") {
  const FeatureFamily f = family_of(2, {"00", "11", "0*"});
  // 00-11 disjoint, 0*-11 disjoint, 00-0* meet
  CHECK(edge_count(build_graph(f)) == 1);
  CHECK(edge_count(build_graph(family_of(1, {"0", "1"}))) == 0);
}

TEST_CASE("count_c4 on fixed shapes") {
  CHECK(count_c4(build_graph(complete_family(3, 4))) == 3);
  // Path on 4 vertices: 0-1-2-3 via shrinking intervals is hard with
  // subcubes; craft adjacency directly.
  IntersectionGraph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(count_c4(path) == 0);
  IntersectionGraph square(4);
  square.add_edge(0, 1);
  square.add_edge(1, 2);
  square.add_edge(2, 3);
  square.add_edge(3, 0);
  CHECK(count_c4(square) == 1);
}

TEST_CASE("count_c4 matches brute force on random graphs") {
  for (std::uint64_t stream = 0; stream < 8; ++stream) {
    const FeatureFamily f =
        sample_family(ModelParams::binomial(3, 0.6), 10, SeedSpec{32, stream});
    const IntersectionGraph g = build_graph(f);
    CHECK(count_c4(g) == c4_brute_force(g));
  }
}

TEST_CASE("bron_kerbosch on fixed graphs") {
  CHECK(bron_kerbosch_max_clique(build_graph(complete_family(4, 7))) == 7);
  CHECK(bron_kerbosch_max_clique(build_graph(family_of(2, {"0*", "*0", "1*"}))) == 2);
  CHECK(bron_kerbosch_max_clique(IntersectionGraph(0)) == 0);
  CHECK(bron_kerbosch_max_clique(IntersectionGraph(3)) == 1);
  CHECK_THROWS_AS(bron_kerbosch_max_clique(IntersectionGraph(65)), std::invalid_argument);
  CHECK(bron_kerbosch_max_clique(IntersectionGraph(65), 100) == 1);
}

TEST_CASE("bron_kerbosch agrees with the coverage-depth clique number") {
  int checked = 0;
  for (std::uint64_t stream = 0; checked < 200; ++stream) {
    Rng rng(SeedSpec{33, stream});
    const int d = 1 + static_cast<int>(rng.next_below(10));
    const int n = 1 + static_cast<int>(rng.next_below(30));
    const bool binomial = rng.next_u64() & 1;
    const ModelParams params =
        binomial ? ModelParams::binomial(d, rng.next_u01())
                 : ModelParams::uniform(d, static_cast<int>(rng.next_below(d + 1)));
    const FeatureFamily f = sample_family(params, n, SeedSpec{34, stream});
    CHECK(bron_kerbosch_max_clique(build_graph(f)) == clique_number(f));
    ++checked;
  }
}

TEST_CASE("edge list export") {
  std::ostringstream out;
  write_edge_list(build_graph(family_of(2, {"0*", "*0", "1*"})), out);
  CHECK(out.str() == "0 1\n1 2\n");
}
