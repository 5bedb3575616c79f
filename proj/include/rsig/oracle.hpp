#pragma once

#include <cstdint>
#include <stdexcept>

#include "rsig/analysis.hpp"
#include "rsig/models.hpp"

namespace rsig::oracle {

/// Exhaustive references used to cross-check the recursive algorithms. They
/// enumerate points of Q_d directly through contains_point and share no code
/// with the branch-and-bound paths.
inline constexpr int kMaxPointScanD = 30;

namespace detail {
inline void check_d(int d) {
  if (d < 0 || d > kMaxPointScanD)
    throw std::invalid_argument("point-scan oracle: d exceeds limit " +
                                std::to_string(kMaxPointScanD));
}

inline PointQd point_from_bits(int d, std::uint64_t y) {
  PointQd p(d);
  for (int c = 0; c < d; ++c)
    if ((y >> c) & 1) p.bits.set(c, true);
  return p;
}
}  // namespace detail

/// Max coverage depth by scanning all 2^d points.
inline DepthWitness depth_by_point_scan(const FeatureFamily& family) {
  detail::check_d(family.d);
  DepthWitness best;
  best.depth = -1;
  const std::uint64_t total = std::uint64_t{1} << family.d;
  for (std::uint64_t y = 0; y < total; ++y) {
    const PointQd p = detail::point_from_bits(family.d, y);
    int depth = 0;
    for (const Subcube& s : family.subcubes)
      if (contains_point(s, p)) ++depth;
    if (depth > best.depth) {
      best.depth = depth;
      best.witness = p;
    }
  }
  return best;
}

inline std::uint64_t uncovered_by_point_scan(const FeatureFamily& family) {
  detail::check_d(family.d);
  std::uint64_t uncovered = 0;
  const std::uint64_t total = std::uint64_t{1} << family.d;
  for (std::uint64_t y = 0; y < total; ++y) {
    const PointQd p = detail::point_from_bits(family.d, y);
    bool hit = false;
    for (const Subcube& s : family.subcubes)
      if (contains_point(s, p)) {
        hit = true;
        break;
      }
    if (!hit) ++uncovered;
  }
  return uncovered;
}

/// Pairwise intersection decided by hunting for a common point.
inline bool intersects_by_point_scan(const Subcube& a, const Subcube& b) {
  detail::check_d(a.d());
  const std::uint64_t total = std::uint64_t{1} << a.d();
  for (std::uint64_t y = 0; y < total; ++y) {
    const PointQd p = detail::point_from_bits(a.d(), y);
    if (contains_point(a, p) && contains_point(b, p)) return true;
  }
  return false;
}

/// Number of points of a subcube, counted one point at a time.
inline std::uint64_t volume_by_point_scan(const Subcube& a) {
  detail::check_d(a.d());
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << a.d();
  for (std::uint64_t y = 0; y < total; ++y)
    if (contains_point(a, detail::point_from_bits(a.d(), y))) ++count;
  return count;
}

/// Probability that two independent uniform k-dimensional subcubes of Q_d
/// intersect, by enumerating every ordered pair of such subcubes.
double uniform_edge_prob_by_enumeration(int d, int k);

/// All subcubes of dimension k in Q_d (enumeration order: star sets in
/// lexicographic mask order, then fixed values in increasing binary order).
std::vector<Subcube> enumerate_subcubes(int d, int k);

}  // namespace rsig::oracle
