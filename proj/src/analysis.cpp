#include "rsig/analysis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "pattern_set.hpp"

namespace rsig {

using internal::PatternSet;

namespace {

constexpr std::uint64_t kDeadlineCheckMask = 0x3fff;  // every 16384 nodes

// Branch-and-bound maximum coverage depth. Splits on the coordinate fixed
// by the most surviving subcubes, explores bit 0 first, prunes a branch when
// its survivor count cannot strictly beat the best depth found.
class DepthSearch {
 public:
  DepthSearch(const PatternSet& ps, const Deadline* deadline, int target)
      : ps_(ps), deadline_(deadline), target_(target) {
    remaining_.assign(ps.wpr, 0);
    for (int c = 0; c < ps.d; ++c)
      remaining_[static_cast<std::size_t>(c) >> 6] |= std::uint64_t{1} << (c & 63);
    counts_.assign(static_cast<std::size_t>(ps.d), 0);
    point_ = PointQd(ps.d);
    best_point_ = PointQd(ps.d);
    levels_.resize(static_cast<std::size_t>(ps.d) + 1);
    best_ = (target > 0) ? target - 1 : -1;
  }

  // Returns max depth (full mode) or a value >= target iff reached (target
  // mode stops as soon as the target is met).
  DepthWitness run() {
    std::vector<std::uint32_t> root(ps_.n);
    std::iota(root.begin(), root.end(), 0);
    rec(0, root);
    if (best_ < 0) best_ = 0;  // target mode with nothing found
    return {best_, best_point_};
  }

  bool found_target() const { return target_ > 0 && best_ >= target_; }

 private:
  void rec(int level, const std::vector<std::uint32_t>& survivors) {
    if ((++nodes_ & kDeadlineCheckMask) == 0 && deadline_ && deadline_->expired())
      throw DeadlineExceeded("depth search exceeded its time budget");
    const int m = static_cast<int>(survivors.size());
    if (m <= best_ || found_target()) return;

    // Pick the remaining coordinate fixed by the most survivors.
    int best_c = -1, best_count = 0;
    for (std::uint32_t i : survivors) {
      const std::uint64_t* fw = ps_.fixed.data() + static_cast<std::size_t>(i) * ps_.wpr;
      for (std::size_t k = 0; k < ps_.wpr; ++k) {
        std::uint64_t w = fw[k] & remaining_[k];
        while (w) {
          const int c = static_cast<int>(k * 64) + std::countr_zero(w);
          w &= w - 1;
          if (++counts_[static_cast<std::size_t>(c)] > best_count) {
            best_count = counts_[static_cast<std::size_t>(c)];
            best_c = c;
          } else if (counts_[static_cast<std::size_t>(c)] == best_count && c < best_c) {
            best_c = c;
          }
        }
      }
    }
    for (std::uint32_t i : survivors) {
      const std::uint64_t* fw = ps_.fixed.data() + static_cast<std::size_t>(i) * ps_.wpr;
      for (std::size_t k = 0; k < ps_.wpr; ++k) {
        std::uint64_t w = fw[k] & remaining_[k];
        while (w) {
          counts_[static_cast<std::size_t>(k * 64) + static_cast<std::size_t>(std::countr_zero(w))] = 0;
          w &= w - 1;
        }
      }
    }

    if (best_c < 0) {
      // No survivor fixes a remaining coordinate: every point of the region
      // lies in all m survivors. Remaining coordinates stay 0 in the witness.
      best_ = m;
      best_point_ = point_;
      return;
    }

    const std::uint64_t cbit = std::uint64_t{1} << (best_c & 63);
    const std::size_t cword = static_cast<std::size_t>(best_c) >> 6;
    remaining_[cword] &= ~cbit;
    for (int b = 0; b <= 1 && !found_target(); ++b) {
      // Deeper recursion only touches slots past level+1, so the child list
      // can live in the per-level scratch without copying.
      std::vector<std::uint32_t>& child = levels_[static_cast<std::size_t>(level) + 1];
      child.clear();
      for (std::uint32_t i : survivors)
        if (!ps_.fixed_bit(i, best_c) || ps_.value_bit(i, best_c) == (b == 1)) child.push_back(i);
      if (b == 1) point_.bits.set(best_c, true);
      rec(level + 1, child);
      if (b == 1) point_.bits.set(best_c, false);
    }
    remaining_[cword] |= cbit;
  }

  const PatternSet& ps_;
  const Deadline* deadline_;
  int target_;
  int best_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> remaining_;
  std::vector<int> counts_;
  std::vector<std::vector<std::uint32_t>> levels_;
  PointQd point_, best_point_;
};

DepthWitness depth_search(const PatternSet& ps, const Deadline* deadline, int target = 0) {
  DepthSearch s(ps, deadline, target);
  return s.run();
}

// Exact uncovered-point recursion shared by uncovered_count and is_cover.
// Coordinates are processed in a fixed order (most-fixed-at-root first);
// each survivor carries the number of its fixed coordinates still ahead, so
// "this subcube covers the whole region" is an O(1) test.
class CoverSearch {
 public:
  CoverSearch(const PatternSet& ps, const Deadline* deadline)
      : d_(ps.d), n_(ps.n), wn_(words_for(static_cast<int>(std::max<std::size_t>(ps.n, 1)))),
        deadline_(deadline) {
    // Static coordinate order: most-fixed first.
    std::vector<int> order(static_cast<std::size_t>(d_));
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::int64_t> cnt(static_cast<std::size_t>(d_), 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (int c = 0; c < d_; ++c)
        if (ps.fixed_bit(i, c)) ++cnt[static_cast<std::size_t>(c)];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return cnt[static_cast<std::size_t>(a)] > cnt[static_cast<std::size_t>(b)];
    });
    std::vector<int> pos(static_cast<std::size_t>(d_));
    for (int t = 0; t < d_; ++t) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = t;

    // Column layout: row t holds, for coordinate order[t], one bit per
    // subcube. Filtering a level then reads sequential words.
    const std::size_t rows = static_cast<std::size_t>(d_);
    fixed_col_.assign(rows * wn_, 0);
    value_col_.assign(rows * wn_, 0);
    std::array<std::uint64_t, 64> fbuf{}, vbuf{};
    for (std::size_t i0 = 0; i0 < n_; i0 += 64) {
      for (int cw = 0; cw * 64 < d_; ++cw) {
        for (int v = 0; v < 64; ++v) {
          const std::size_t i = i0 + static_cast<std::size_t>(v);
          fbuf[static_cast<std::size_t>(v)] =
              (i < n_) ? ps.fixed[i * ps.wpr + static_cast<std::size_t>(cw)] : 0;
          vbuf[static_cast<std::size_t>(v)] =
              (i < n_) ? ps.value[i * ps.wpr + static_cast<std::size_t>(cw)] : 0;
        }
        transpose64(fbuf.data());
        transpose64(vbuf.data());
        const int width = std::min(64, d_ - cw * 64);
        for (int c = 0; c < width; ++c) {
          const std::size_t t = static_cast<std::size_t>(pos[static_cast<std::size_t>(cw * 64 + c)]);
          fixed_col_[t * wn_ + i0 / 64] = fbuf[static_cast<std::size_t>(c)];
          value_col_[t * wn_ + i0 / 64] = vbuf[static_cast<std::size_t>(c)];
        }
      }
    }

    // suffix_[l] bit i: subcube i still fixes a coordinate at positions >= l.
    // A survivor outside suffix_[l] covers the whole level-l region.
    suffix_.assign(static_cast<std::size_t>(d_ + 1) * wn_, 0);
    for (int l = d_ - 1; l >= 0; --l)
      for (std::size_t k = 0; k < wn_; ++k)
        suffix_word(l)[k] = suffix_word(l + 1)[k] | fixed_col_[static_cast<std::size_t>(l) * wn_ + k];

    mask_bufs_.resize(static_cast<std::size_t>(d_) + 1);
    sparse_bufs_.resize(static_cast<std::size_t>(d_) + 1);
  }

  UBig count() {
    UBig total;
    Verdict v = prepare_root();
    if (v == Verdict::kCovered) return total;
    if (v == Verdict::kEmpty) {
      total.add_pow2(static_cast<unsigned>(d_));
      return total;
    }
    rec_mask<true>(0, root_mask_.data(), n_, &total);
    return total;
  }

  bool covered() {
    Verdict v = prepare_root();
    if (v == Verdict::kCovered) return true;
    if (v == Verdict::kEmpty) return d_ < 0;  // an empty family never covers
    return rec_mask<false>(0, root_mask_.data(), n_, nullptr);
  }

 private:
  enum class Verdict { kOpen, kCovered, kEmpty };

  static constexpr std::size_t kSparseThreshold = 512;

  std::uint64_t* suffix_word(int level) {
    return suffix_.data() + static_cast<std::size_t>(level) * wn_;
  }
  const std::uint64_t* fixed_row(int level) const {
    return fixed_col_.data() + static_cast<std::size_t>(level) * wn_;
  }
  const std::uint64_t* value_row(int level) const {
    return value_col_.data() + static_cast<std::size_t>(level) * wn_;
  }

  Verdict prepare_root() {
    if (n_ == 0) return Verdict::kEmpty;
    root_mask_.assign(wn_, ~std::uint64_t{0});
    if ((n_ & 63) != 0) root_mask_.back() = (std::uint64_t{1} << (n_ & 63)) - 1;
    for (std::size_t k = 0; k < wn_; ++k)
      if (root_mask_[k] & ~suffix_word(0)[k]) return Verdict::kCovered;
    return Verdict::kOpen;
  }

  void tick() {
    if ((++nodes_ & kDeadlineCheckMask) == 0 && deadline_ && deadline_->expired())
      throw DeadlineExceeded("cover recursion exceeded its time budget");
  }

  bool leaf_uncovered(int level, UBig* total) {
    if (total) {
      total->add_pow2(static_cast<unsigned>(d_ - level));
      return true;  // keep counting
    }
    return false;  // decide mode: uncovered point found
  }

  // Counting mode returns true always; decide mode returns "region covered".
  template <bool Counting>
  bool rec_mask(int level, const std::uint64_t* mask, std::size_t m, UBig* total) {
    tick();
    if (m < kSparseThreshold) {
      sparse_scratch_.clear();
      for (std::size_t k = 0; k < wn_; ++k) {
        std::uint64_t w = mask[k];
        while (w) {
          sparse_scratch_.push_back(static_cast<std::uint32_t>(k * 64) +
                                    static_cast<std::uint32_t>(std::countr_zero(w)));
          w &= w - 1;
        }
      }
      return rec_sparse<Counting>(level, sparse_scratch_, total);
    }

    // One fused pass builds both children, their sizes, their covered flags
    // and whether any survivor fixes this coordinate at all.
    std::vector<std::uint64_t>& c0 = mask_bufs_[static_cast<std::size_t>(level)].first;
    std::vector<std::uint64_t>& c1 = mask_bufs_[static_cast<std::size_t>(level)].second;
    c0.resize(wn_);
    c1.resize(wn_);
    const std::uint64_t* fx = fixed_row(level);
    const std::uint64_t* vx = value_row(level);
    const std::uint64_t* next_suffix = suffix_word(level + 1);
    std::size_t m0 = 0, m1 = 0;
    bool covered0 = false, covered1 = false, touched = false;
    for (std::size_t k = 0; k < wn_; ++k) {
      const std::uint64_t pk = mask[k];
      const std::uint64_t fk = pk & fx[k];
      touched = touched || fk != 0;
      const std::uint64_t w0 = pk & ~(fk & vx[k]);
      const std::uint64_t w1 = pk & ~(fk & ~vx[k]);
      c0[k] = w0;
      c1[k] = w1;
      m0 += static_cast<std::size_t>(std::popcount(w0));
      m1 += static_cast<std::size_t>(std::popcount(w1));
      covered0 = covered0 || (w0 & ~next_suffix[k]);
      covered1 = covered1 || (w1 & ~next_suffix[k]);
    }

    if (!touched) {
      // Both halves are identical; evaluate once.
      if (covered0) return true;
      if (Counting) {
        UBig half;
        rec_mask<Counting>(level + 1, mask, m, &half);
        half += half;
        *total += half;
        return true;
      }
      return rec_mask<Counting>(level + 1, mask, m, nullptr);
    }

    const auto descend = [&](const std::uint64_t* child, std::size_t mc, bool cov) {
      if (cov) return true;
      if (mc == 0) return leaf_uncovered(level + 1, total);
      return rec_mask<Counting>(level + 1, child, mc, total);
    };
    if (!Counting && m1 < m0) {
      // Visit the sparser branch first: uncovered points surface sooner.
      return descend(c1.data(), m1, covered1) && descend(c0.data(), m0, covered0);
    }
    return descend(c0.data(), m0, covered0) && descend(c1.data(), m1, covered1);
  }

  // `node` belongs to the caller's level (or the transition scratch) and is
  // only read; children live in this level's slot, which sibling subtrees
  // reuse after each other.
  template <bool Counting>
  bool rec_sparse(int level, const std::vector<std::uint32_t>& node, UBig* total) {
    tick();
    if (node.empty()) return leaf_uncovered(level, total);
    const std::uint64_t* fx = fixed_row(level);
    const std::uint64_t* vx = value_row(level);
    const std::uint64_t* next_suffix = suffix_word(level + 1);
    const auto bit = [](const std::uint64_t* row, std::uint32_t i) {
      return ((row[i >> 6] >> (i & 63)) & 1u) != 0;
    };

    bool touched = false;
    for (std::uint32_t i : node) touched = touched || bit(fx, i);
    if (!touched) {
      // Both halves are identical to this node.
      for (std::uint32_t i : node)
        if (!bit(next_suffix, i)) return true;  // one survivor covers everything
      if (!Counting) return rec_sparse<Counting>(level + 1, node, nullptr);
      UBig half;
      rec_sparse<Counting>(level + 1, node, &half);
      half += half;
      *total += half;
      return true;
    }

    for (int b = 0; b <= 1; ++b) {
      std::vector<std::uint32_t>& child = sparse_bufs_[static_cast<std::size_t>(level)];
      child.clear();
      bool covered = false;
      for (std::uint32_t i : node) {
        if (bit(fx, i) && bit(vx, i) != (b == 1)) continue;
        if (!bit(next_suffix, i)) {
          covered = true;
          break;
        }
        child.push_back(i);
      }
      if (covered) continue;
      if (!rec_sparse<Counting>(level + 1, child, total)) return false;
    }
    return true;
  }

  int d_;
  std::size_t n_, wn_;
  const Deadline* deadline_;
  std::vector<std::uint64_t> fixed_col_, value_col_, suffix_;
  std::vector<std::uint64_t> root_mask_;
  std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> mask_bufs_;
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> sparse_bufs_;
  std::vector<std::uint32_t> sparse_scratch_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

DepthWitness max_coverage_depth(const FeatureFamily& family, const Deadline* deadline) {
  return depth_search(PatternSet::from_family(family), deadline);
}

int clique_number(const FeatureFamily& family) {
  // Helly property: pairwise-intersecting subcubes share a common point, so
  // the clique number equals the maximum coverage depth.
  return max_coverage_depth(family).depth;
}

namespace {

// Patterns of the family traced into the free coordinates of f(anchor).
PatternSet restricted_to_anchor(const FeatureFamily& family, int anchor,
                                std::size_t* others_out) {
  const Subcube& a = family.subcubes[static_cast<std::size_t>(anchor)];
  std::vector<int> free_coords;
  free_coords.reserve(static_cast<std::size_t>(a.dimension()));
  for (int c = 0; c < a.d(); ++c)
    if (!a.is_fixed(c)) free_coords.push_back(c);

  std::vector<int> hits;
  for (int u = 0; u < family.size(); ++u)
    if (u != anchor && intersects(family.subcubes[static_cast<std::size_t>(u)], a))
      hits.push_back(u);

  PatternSet ps(static_cast<int>(free_coords.size()));
  ps.n = hits.size();
  ps.fixed.assign(ps.n * ps.wpr, 0);
  ps.value.assign(ps.n * ps.wpr, 0);
  for (std::size_t row = 0; row < hits.size(); ++row) {
    const Subcube& s = family.subcubes[static_cast<std::size_t>(hits[row])];
    for (std::size_t t = 0; t < free_coords.size(); ++t) {
      const int c = free_coords[t];
      if (!s.is_fixed(c)) continue;
      ps.fixed[row * ps.wpr + (t >> 6)] |= std::uint64_t{1} << (t & 63);
      if (s.fixed_value(c)) ps.value[row * ps.wpr + (t >> 6)] |= std::uint64_t{1} << (t & 63);
    }
  }
  if (others_out) *others_out = ps.n;
  return ps;
}

}  // namespace

bool anchored_depth_at_least(const FeatureFamily& family, int anchor, int target,
                             const Deadline* deadline) {
  if (anchor < 0 || anchor >= family.size())
    throw std::out_of_range("anchored_depth_at_least: anchor out of range");
  if (target <= 1) return true;  // the anchor covers its own points
  std::size_t others = 0;
  PatternSet ps = restricted_to_anchor(family, anchor, &others);
  if (1 + static_cast<int>(others) < target) return false;
  DepthSearch s(ps, deadline, target - 1);
  s.run();
  return s.found_target();
}

CliqueMembership clique_members(const FeatureFamily& family, int s, const Deadline* deadline) {
  if (s < 1) throw std::invalid_argument("clique_members: s must be >= 1");
  CliqueMembership out;
  out.s = s;
  for (int v = 0; v < family.size(); ++v) {
    if (anchored_depth_at_least(family, v, s, deadline)) {
      out.members.push_back(v);
      out.member_dimensions.push_back(family.subcubes[static_cast<std::size_t>(v)].dimension());
    }
  }
  return out;
}

UBig uncovered_count(const FeatureFamily& family, const Deadline* deadline) {
  CoverSearch cs(PatternSet::from_family(family), deadline);
  return cs.count();
}

bool is_cover(const FeatureFamily& family, const Deadline* deadline) {
  CoverSearch cs(PatternSet::from_family(family), deadline);
  return cs.covered();
}

bool is_cover_sampled(const ModelParams& params, std::uint64_t n, SeedSpec seed,
                      bool fast_sampler, const Deadline* deadline) {
  // The search keeps the whole set plus per-level survivor buffers resident;
  // refuse configurations that cannot fit rather than thrash.
  const std::size_t wpr = words_for(params.d());
  const std::uint64_t bytes = n * (16 * static_cast<std::uint64_t>(wpr) + 40);
  if (bytes > analysis_limits::kSampledCoverMemoryBudget)
    throw std::runtime_error(
        "cover trial at n=" + std::to_string(n) + " needs about " +
        std::to_string(bytes >> 20) + " MiB, beyond the per-trial memory budget of " +
        std::to_string(analysis_limits::kSampledCoverMemoryBudget >> 20) + " MiB");
  CoverSearch cs(internal::sample_pattern_set(params, n, seed, fast_sampler, deadline), deadline);
  return cs.covered();
}

namespace {

// Explicit uncovered-point bitset for small ambient cubes.
class PointPainter {
 public:
  explicit PointPainter(int d)
      : d_(d), words_(std::max<std::size_t>(1, std::size_t{1} << std::max(0, d - 6))) {
    uncovered_.assign(words_, ~std::uint64_t{0});
    const std::uint64_t total_bits = std::uint64_t{1} << d_;
    if (d_ < 6) uncovered_[0] = (std::uint64_t{1} << total_bits) - 1;
    remaining_ = total_bits;
  }

  void paint(const Subcube& s) {
    std::uint64_t free_mask = 0, base = 0;
    for (int c = 0; c < d_; ++c) {
      if (s.is_fixed(c)) {
        if (s.fixed_value(c)) base |= std::uint64_t{1} << c;
      } else {
        free_mask |= std::uint64_t{1} << c;
      }
    }
    std::uint64_t sub = free_mask;
    while (true) {
      clear_point(base | sub);
      if (sub == 0) break;
      sub = (sub - 1) & free_mask;
    }
  }

  bool all_covered() const { return remaining_ == 0; }

 private:
  void clear_point(std::uint64_t y) {
    std::uint64_t& w = uncovered_[y >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (y & 63);
    if (w & bit) {
      w &= ~bit;
      --remaining_;
    }
  }

  int d_;
  std::size_t words_;
  std::vector<std::uint64_t> uncovered_;
  std::uint64_t remaining_;
};

// Disjoint-subcube decomposition of the uncovered region; exact at any
// dimension but the fragment list can grow combinatorially, so it is
// guarded by a budget.
class FragmentCover {
 public:
  explicit FragmentCover(int d) { fragments_.push_back(Subcube(d)); }

  void insert(const Subcube& s) {
    std::vector<Subcube> children;
    for (std::size_t i = 0; i < fragments_.size();) {
      if (!intersects(fragments_[i], s)) {
        ++i;
        continue;
      }
      Subcube r = std::move(fragments_[i]);
      fragments_[i] = std::move(fragments_.back());
      fragments_.pop_back();
      // Peel r along the coordinates s fixes inside r's free set; the final
      // piece r&s is covered and dropped.
      for (int c = 0; c < r.d(); ++c) {
        if (!s.is_fixed(c) || r.is_fixed(c)) continue;
        Subcube piece = r;
        piece.fix(c, !s.fixed_value(c));
        children.push_back(std::move(piece));
        r.fix(c, s.fixed_value(c));
      }
    }
    if (fragments_.size() + children.size() > analysis_limits::kFragmentBudget)
      throw std::runtime_error(
          "cover tracking exceeded the fragment budget; this configuration is too large for "
          "exact incremental covering");
    fragments_.insert(fragments_.end(), std::make_move_iterator(children.begin()),
                      std::make_move_iterator(children.end()));
  }

  bool all_covered() const { return fragments_.empty(); }

 private:
  std::vector<Subcube> fragments_;
};

}  // namespace

HittingOutcome run_hitting(const ModelParams& params, const PropertySpec& property,
                           SeedSpec seed, std::uint64_t n_max, const Deadline* deadline) {
  HittingOutcome out;
  out.family = sample_family(params, 0, seed);

  const int d = params.d();
  std::optional<PointPainter> painter;
  std::optional<FragmentCover> fragments;
  if (property.kind == PropertySpec::Kind::kCover) {
    if (d <= analysis_limits::kPainterMaxD)
      painter.emplace(d);
    else
      fragments.emplace(d);
  }

  for (std::uint64_t m = 1; m <= n_max; ++m) {
    if (deadline && (m & 0xff) == 0 && deadline->expired())
      throw DeadlineExceeded("hitting-time run exceeded its time budget");
    extend_family(out.family, params, m, seed);
    bool holds = false;
    if (property.kind == PropertySpec::Kind::kClique) {
      holds = anchored_depth_at_least(out.family, static_cast<int>(m) - 1, property.s, deadline);
    } else {
      const Subcube& s = out.family.subcubes.back();
      if (painter)
        painter->paint(s);
      else
        fragments->insert(s);
      holds = painter ? painter->all_covered() : fragments->all_covered();
    }
    if (holds) {
      out.n = m;
      return out;
    }
  }
  out.n = n_max;
  out.saturated = true;
  return out;
}

std::uint64_t hitting_time(const ModelParams& params, const PropertySpec& property,
                           SeedSpec seed, std::uint64_t n_max, bool* saturated) {
  HittingOutcome out = run_hitting(params, property, seed, n_max);
  if (saturated) *saturated = out.saturated;
  return out.n;
}

}  // namespace rsig
