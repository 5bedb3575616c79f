#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rsig/models.hpp"

namespace rsig {

/// Simple undirected graph as n bit-rows of length n. Symmetric, zero
/// diagonal.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;
  explicit IntersectionGraph(int n) : n_(n), wpr_(words_for(n)), bits_(static_cast<std::size_t>(n) * wpr_, 0) {}

  int n() const { return n_; }
  std::size_t words_per_row() const { return wpr_; }

  bool adjacent(int u, int v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void add_edge(int u, int v) {
    set_bit(u, v);
    set_bit(v, u);
  }

  const std::uint64_t* row(int u) const { return bits_.data() + static_cast<std::size_t>(u) * wpr_; }

  int degree(int u) const;

 private:
  void set_bit(int u, int v) {
    bits_[static_cast<std::size_t>(u) * wpr_ + (static_cast<std::size_t>(v) >> 6)] |=
        std::uint64_t{1} << (v & 63);
  }

  int n_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Intersection graph of a family: edge uv iff the feature subcubes meet.
IntersectionGraph build_graph(const FeatureFamily& family);

std::int64_t edge_count(const IntersectionGraph& g);

/// Number of unordered 4-cycles (vertex quadruples with a cyclic ordering of
/// four edges; chords do not matter). Exact.
std::int64_t count_c4(const IntersectionGraph& g);

/// Exact clique number by pivoting Bron-Kerbosch. Guarded by `limit` since
/// this is the exponential reference algorithm.
int bron_kerbosch_max_clique(const IntersectionGraph& g, int limit = 64);

/// Edge list, one "u v" line per edge with u < v.
void write_edge_list(const IntersectionGraph& g, std::ostream& out);

}  // namespace rsig
