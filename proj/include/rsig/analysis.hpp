#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsig/bigint.hpp"
#include "rsig/models.hpp"

namespace rsig {

/// Wall-clock budget for long-running exact computations. Checked
/// cooperatively; expiry raises DeadlineExceeded.
class Deadline {
 public:
  explicit Deadline(double seconds)
      : at_(std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds))) {}

  bool expired() const { return std::chrono::steady_clock::now() >= at_; }

 private:
  std::chrono::steady_clock::time_point at_;
};

struct DeadlineExceeded : std::runtime_error {
  explicit DeadlineExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Maximum coverage depth of a family: the largest number of feature
/// subcubes meeting in one point, with a point achieving it.
struct DepthWitness {
  int depth = 0;
  PointQd witness;
};

/// Vertices lying in at least one s-clique, with the dimensions of their
/// feature subcubes.
struct CliqueMembership {
  int s = 1;
  std::vector<int> members;
  std::vector<int> member_dimensions;
};

/// Exact max over y in Q_d of #{v : y in f(v)}, by branch-and-bound
/// coordinate splitting. Ties in the reported witness resolve toward bit 0.
DepthWitness max_coverage_depth(const FeatureFamily& family,
                                const Deadline* deadline = nullptr);

/// Clique number of the intersection graph. Subcubes have the Helly
/// property, so this equals max_coverage_depth(family).depth exactly.
int clique_number(const FeatureFamily& family);

/// True iff some point of f(anchor) lies in at least `target` of the family
/// subcubes (anchor included). This is the incremental step of clique
/// hitting times: a new deepest point must lie in the newest subcube.
bool anchored_depth_at_least(const FeatureFamily& family, int anchor, int target,
                             const Deadline* deadline = nullptr);

CliqueMembership clique_members(const FeatureFamily& family, int s,
                                const Deadline* deadline = nullptr);

/// Exact |Q_d \ union f(v)| by recursive coordinate splitting, as an
/// arbitrary-precision count (2^d overflows native words past d = 63).
UBig uncovered_count(const FeatureFamily& family, const Deadline* deadline = nullptr);

/// uncovered_count == 0, but short-circuits at the first uncovered point.
bool is_cover(const FeatureFamily& family, const Deadline* deadline = nullptr);

/// is_cover on a family sampled straight into compact storage, for Monte
/// Carlo trials whose n would be too large to hold as Subcube objects. The
/// per-coordinate sampler draws identically to sample_family; the fast path
/// is the word-parallel binomial generator. Throws when the trial cannot fit
/// in the per-trial memory budget.
bool is_cover_sampled(const ModelParams& params, std::uint64_t n, SeedSpec seed,
                      bool fast_sampler = false, const Deadline* deadline = nullptr);

struct PropertySpec {
  enum class Kind { kClique, kCover };
  Kind kind = Kind::kCover;
  int s = 0;

  static PropertySpec clique(int s) {
    if (s < 1) throw std::invalid_argument("clique property: s must be >= 1");
    return {Kind::kClique, s};
  }
  static PropertySpec cover() { return {Kind::kCover, 0}; }

  std::string describe() const {
    return kind == Kind::kClique ? "clique(" + std::to_string(s) + ")" : "cover";
  }

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

struct HittingOutcome {
  std::uint64_t n = 0;    // first size with the property; n_max when saturated
  bool saturated = false;
  FeatureFamily family;   // the sampled prefix at return time
};

/// Grows the family one subcube at a time along the seed's prefix and
/// returns the first n at which the monotone property holds. Keeps
/// incremental state: the newest-subcube depth check for cliques, the
/// uncovered region for covers.
HittingOutcome run_hitting(const ModelParams& params, const PropertySpec& property,
                           SeedSpec seed, std::uint64_t n_max,
                           const Deadline* deadline = nullptr);

/// run_hitting without the family.
std::uint64_t hitting_time(const ModelParams& params, const PropertySpec& property,
                           SeedSpec seed, std::uint64_t n_max, bool* saturated = nullptr);

namespace analysis_limits {
/// Incremental cover tracking keeps an explicit point bitset up to this
/// dimension and a disjoint-fragment decomposition above it.
inline constexpr int kPainterMaxD = 26;
/// Fragment decompositions refuse to grow past this many fragments.
inline constexpr std::size_t kFragmentBudget = 8u << 20;
/// Resident bytes one sampled cover trial may use (patterns plus buffers).
inline constexpr std::uint64_t kSampledCoverMemoryBudget = 2'500'000'000;
}  // namespace analysis_limits

}  // namespace rsig
