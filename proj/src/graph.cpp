#include "rsig/graph.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace rsig {

namespace {

int popcount_row(const std::uint64_t* row, std::size_t words) {
  int c = 0;
  for (std::size_t k = 0; k < words; ++k) c += std::popcount(row[k]);
  return c;
}

}  // namespace

int IntersectionGraph::degree(int u) const {
  return popcount_row(row(u), wpr_);
}

IntersectionGraph build_graph(const FeatureFamily& family) {
  const int n = family.size();
  IntersectionGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (intersects(family.subcubes[static_cast<std::size_t>(u)],
                     family.subcubes[static_cast<std::size_t>(v)]))
        g.add_edge(u, v);
  return g;
}

std::int64_t edge_count(const IntersectionGraph& g) {
  std::int64_t twice = 0;
  for (int u = 0; u < g.n(); ++u) twice += popcount_row(g.row(u), g.words_per_row());
  return twice / 2;
}

std::int64_t count_c4(const IntersectionGraph& g) {
  // Each 4-cycle a-b-c-d is seen once from each diagonal pair {a,c}, {b,d}:
  // sum C(codegree,2) over unordered pairs counts every cycle exactly twice.
  const int n = g.n();
  const std::size_t w = g.words_per_row();
  std::int64_t twice = 0;
  for (int u = 0; u < n; ++u) {
    const std::uint64_t* ru = g.row(u);
    for (int v = u + 1; v < n; ++v) {
      const std::uint64_t* rv = g.row(v);
      std::int64_t m = 0;
      for (std::size_t k = 0; k < w; ++k) m += std::popcount(ru[k] & rv[k]);
      twice += m * (m - 1) / 2;
    }
  }
  return twice / 2;
}

namespace {

struct BkState {
  const IntersectionGraph* g;
  std::size_t w;
  int best = 0;
  std::vector<std::uint64_t> scratch;

  std::uint64_t* alloc(int depth, int slot) {
    return scratch.data() + (static_cast<std::size_t>(depth) * 3 + static_cast<std::size_t>(slot)) * w;
  }

  void run(int depth, int size, std::uint64_t* p, std::uint64_t* x) {
    bool p_empty = true, x_empty = true;
    for (std::size_t k = 0; k < w; ++k) {
      p_empty = p_empty && p[k] == 0;
      x_empty = x_empty && x[k] == 0;
    }
    if (p_empty) {
      if (x_empty && size > best) best = size;
      return;
    }
    if (size + popcount_row(p, w) <= best) return;

    // Pivot: vertex of P|X with most neighbours in P.
    int pivot = -1, pivot_deg = -1;
    for (std::size_t k = 0; k < w; ++k) {
      std::uint64_t both = p[k] | x[k];
      while (both) {
        const int v = static_cast<int>(k * 64) + std::countr_zero(both);
        both &= both - 1;
        const std::uint64_t* rv = g->row(v);
        int deg = 0;
        for (std::size_t j = 0; j < w; ++j) deg += std::popcount(p[j] & rv[j]);
        if (deg > pivot_deg) {
          pivot_deg = deg;
          pivot = v;
        }
      }
    }

    std::uint64_t* cand = alloc(depth, 0);
    const std::uint64_t* rp = g->row(pivot);
    for (std::size_t k = 0; k < w; ++k) cand[k] = p[k] & ~rp[k];

    for (std::size_t k = 0; k < w; ++k) {
      while (cand[k]) {
        const int v = static_cast<int>(k * 64) + std::countr_zero(cand[k]);
        cand[k] &= cand[k] - 1;
        const std::uint64_t* rv = g->row(v);
        std::uint64_t* np = alloc(depth, 1);
        std::uint64_t* nx = alloc(depth, 2);
        for (std::size_t j = 0; j < w; ++j) {
          np[j] = p[j] & rv[j];
          nx[j] = x[j] & rv[j];
        }
        run(depth + 1, size + 1, np, nx);
        const std::uint64_t bit = std::uint64_t{1} << (v & 63);
        p[static_cast<std::size_t>(v) >> 6] &= ~bit;
        x[static_cast<std::size_t>(v) >> 6] |= bit;
      }
    }
  }
};

}  // namespace

int bron_kerbosch_max_clique(const IntersectionGraph& g, int limit) {
  const int n = g.n();
  if (n > limit)
    throw std::invalid_argument("bron_kerbosch_max_clique: n exceeds oracle limit " +
                                std::to_string(limit));
  if (n == 0) return 0;
  BkState st;
  st.g = &g;
  st.w = g.words_per_row();
  st.scratch.assign(static_cast<std::size_t>(n + 1) * 3 * st.w, 0);
  std::vector<std::uint64_t> p(st.w, 0), x(st.w, 0);
  for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
  st.run(0, 0, p.data(), x.data());
  return st.best;
}

void write_edge_list(const IntersectionGraph& g, std::ostream& out) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.adjacent(u, v)) out << u << ' ' << v << '\n';
}

}  // namespace rsig
