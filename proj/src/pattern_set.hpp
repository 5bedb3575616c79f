#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsig/analysis.hpp"
#include "rsig/models.hpp"
#include "rsig/rng.hpp"
#include "rsig/subcube.hpp"

namespace rsig::internal {

// Subcube rows unpacked into struct-of-arrays form: 2 * ceil(d/64) words per
// row, no per-row allocations. The exact-search engines run on this, which
// also lets Monte Carlo trials sample huge families without building
// Subcube objects.
struct PatternSet {
  int d = 0;
  std::size_t wpr = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> fixed, value;

  explicit PatternSet(int dim) : d(dim), wpr(words_for(dim)) {}

  static PatternSet from_family(const FeatureFamily& family) {
    PatternSet ps(family.d);
    ps.n = family.subcubes.size();
    ps.fixed.resize(ps.n * ps.wpr);
    ps.value.resize(ps.n * ps.wpr);
    for (std::size_t i = 0; i < ps.n; ++i) {
      const Subcube& s = family.subcubes[i];
      for (std::size_t k = 0; k < ps.wpr; ++k) {
        ps.fixed[i * ps.wpr + k] = s.fixed_mask().words()[k];
        ps.value[i * ps.wpr + k] = s.values().words()[k];
      }
    }
    return ps;
  }

  bool fixed_bit(std::size_t i, int c) const {
    return (fixed[i * wpr + (static_cast<std::size_t>(c) >> 6)] >> (c & 63)) & 1u;
  }
  bool value_bit(std::size_t i, int c) const {
    return (value[i * wpr + (static_cast<std::size_t>(c) >> 6)] >> (c & 63)) & 1u;
  }
  int fixed_popcount(std::size_t i) const {
    int c = 0;
    for (std::size_t k = 0; k < wpr; ++k) c += std::popcount(fixed[i * wpr + k]);
    return c;
  }
};

/// Samples n feature subcubes straight into a PatternSet. The per-coordinate
/// path draws exactly like sample_family (bit-identical rows); the fast path
/// uses the word-parallel binomial generator. The deadline is polled between
/// chunks so budgeted experiments can stop mid-sample.
PatternSet sample_pattern_set(const ModelParams& params, std::uint64_t n, SeedSpec seed,
                              bool fast_sampler, const Deadline* deadline);

}  // namespace rsig::internal
