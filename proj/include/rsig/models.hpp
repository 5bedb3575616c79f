#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rsig/rng.hpp"
#include "rsig/subcube.hpp"

namespace rsig {

/// Binomial model: each coordinate is independently * with probability p,
/// otherwise a fair bit.
struct BinomialParams {
  int d = 0;
  double p = 0.0;

  friend bool operator==(const BinomialParams&, const BinomialParams&) = default;
};

/// Uniform model: a uniformly random k-dimensional subcube of Q_d.
struct UniformParams {
  int d = 0;
  int k = 0;

  friend bool operator==(const UniformParams&, const UniformParams&) = default;
};

class ModelParams {
 public:
  ModelParams() : v_(BinomialParams{}) {}
  ModelParams(BinomialParams b) : v_(b) { validate(); }
  ModelParams(UniformParams u) : v_(u) { validate(); }

  static ModelParams binomial(int d, double p) { return ModelParams(BinomialParams{d, p}); }
  static ModelParams uniform(int d, int k) { return ModelParams(UniformParams{d, k}); }

  bool is_binomial() const { return std::holds_alternative<BinomialParams>(v_); }
  const BinomialParams& as_binomial() const { return std::get<BinomialParams>(v_); }
  const UniformParams& as_uniform() const { return std::get<UniformParams>(v_); }

  int d() const {
    return is_binomial() ? as_binomial().d : as_uniform().d;
  }

  std::string describe() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  void validate() const;

  std::variant<BinomialParams, UniformParams> v_;
};

/// An ordered family of feature subcubes over a common ambient cube; the
/// vertex set of an intersection graph. `meta` echoes provenance for the
/// text serialization and is not part of family equality.
struct FeatureFamily {
  int d = 0;
  std::vector<Subcube> subcubes;

  struct Meta {
    std::string model = "manual";
    std::string params = "-";
    std::string seed = "-";
  } meta;

  int size() const { return static_cast<int>(subcubes.size()); }

  friend bool operator==(const FeatureFamily& a, const FeatureFamily& b) {
    return a.d == b.d && a.subcubes == b.subcubes;
  }
};

/// One binomial random subcube; consumes one uniform real per coordinate.
Subcube sample_binomial_subcube(const BinomialParams& params, Rng& rng);

/// One uniform random k-dimensional subcube: the *-set is a uniform k-subset
/// (partial Fisher-Yates) and fixed coordinates get independent fair bits.
Subcube sample_uniform_subcube(const UniformParams& params, Rng& rng);

/// n independent subcubes. Pure function of (params, n, seed), and a prefix
/// of any longer family drawn from the same seed.
FeatureFamily sample_family(const ModelParams& params, std::uint64_t n, SeedSpec seed);

/// Extends `family` in place to n subcubes, continuing the same draw as
/// sample_family(params, n, seed).
void extend_family(FeatureFamily& family, const ModelParams& params, std::uint64_t n,
                   SeedSpec seed);

/// Word-parallel binomial sampler: appends n subcubes distribution-equivalent
/// to (but not bit-identical with) the per-coordinate path. Used by large
/// Monte Carlo runs; validated against the simple sampler statistically.
void sample_binomial_family_fast(FeatureFamily& family, const BinomialParams& params,
                                 std::uint64_t n, SeedSpec seed);

/// Text serialization: header "d n model params seed", then one {0,1,*}^d row
/// per vertex. Round trips bit-exactly.
void save_family(const FeatureFamily& family, std::ostream& out);
void save_family(const FeatureFamily& family, const std::string& path);
FeatureFamily load_family(std::istream& in);
FeatureFamily load_family(const std::string& path);

}  // namespace rsig
