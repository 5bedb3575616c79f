#pragma once

#include <cstdint>

namespace rsig {

/// Identifies one reproducible random stream: trials own disjoint streams so
/// they can run in parallel without coordination.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  SeedSpec with_stream(std::uint64_t s) const { return {master_seed, s}; }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

namespace detail {

// SplitMix64 finalizer. Used both as a mixer for key derivation and as the
// per-counter output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2) + mix64(b)));
}

}  // namespace detail

/// Counter-based generator: the value at any counter is a pure function of
/// (key, counter), so streams are splittable and randomly addressable.
class Rng {
 public:
  explicit Rng(SeedSpec seed)
      : key_(detail::combine(detail::mix64(seed.master_seed), seed.stream_id)) {}
  Rng(SeedSpec seed, std::uint64_t substream)
      : key_(detail::combine(detail::combine(detail::mix64(seed.master_seed), seed.stream_id),
                             substream)) {}

  std::uint64_t next_u64() { return at(ctr_++); }

  /// Uniform double in [0,1) with 53 random bits.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Unbiased (rejection on the tail).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  std::uint64_t at(std::uint64_t counter) const {
    return detail::mix64(key_ + counter * 0x9e3779b97f4a7c15ull);
  }

  /// Derives an independent child generator; used per sampled object so the
  /// draw count of one object never shifts another.
  Rng child(std::uint64_t id) const { return Rng(detail::combine(key_, id)); }

 private:
  explicit Rng(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace rsig
