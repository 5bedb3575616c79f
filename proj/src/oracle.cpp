#include "rsig/oracle.hpp"

#include <bit>

namespace rsig::oracle {

std::vector<Subcube> enumerate_subcubes(int d, int k) {
  if (d < 0 || d > 20) throw std::invalid_argument("enumerate_subcubes: d too large");
  if (k < 0 || k > d) throw std::invalid_argument("enumerate_subcubes: need 0 <= k <= d");
  std::vector<Subcube> out;
  const std::uint32_t total_masks = std::uint32_t{1} << d;
  for (std::uint32_t stars = 0; stars < total_masks; ++stars) {
    if (std::popcount(stars) != k) continue;
    const std::uint32_t fixed = ~stars & (total_masks - 1);
    const int fixed_count = d - k;
    for (std::uint32_t assignment = 0; assignment < (std::uint32_t{1} << fixed_count);
         ++assignment) {
      Subcube s(d);
      int slot = 0;
      for (int c = 0; c < d; ++c)
        if ((fixed >> c) & 1) s.fix(c, (assignment >> slot++) & 1);
      out.push_back(std::move(s));
    }
  }
  return out;
}

double uniform_edge_prob_by_enumeration(int d, int k) {
  const std::vector<Subcube> all = enumerate_subcubes(d, k);
  std::uint64_t meet = 0;
  for (const Subcube& a : all)
    for (const Subcube& b : all)
      if (intersects(a, b)) ++meet;
  const double total = static_cast<double>(all.size()) * static_cast<double>(all.size());
  return static_cast<double>(meet) / total;
}

}  // namespace rsig::oracle
