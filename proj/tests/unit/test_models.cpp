#include "rsig/models.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"

using namespace rsig;

TEST_CASE("binomial sampler degenerate parameters") {
  Rng rng(SeedSpec{7, 0});
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_binomial_subcube({12, 0.0}, rng).dimension() == 0);
    CHECK(sample_binomial_subcube({12, 1.0}, rng) == Subcube(12));
  }
}

TEST_CASE("binomial sampler star fraction concentrates") {
  Rng rng(SeedSpec{7, 1});
  const int d = 10000;
  const Subcube s = sample_binomial_subcube({d, 0.5}, rng);
  const double fraction = static_cast<double>(s.dimension()) / d;
  const double se = std::sqrt(0.25 / d);
  CHECK(std::abs(fraction - 0.5) <= 3 * se);
}

TEST_CASE("binomial sampler d=1 cell frequencies pass a chi-square test") {
  const double p = 0.37;
  const int samples = 1'000'000;
  Rng rng(SeedSpec{7, 2});
  std::map<std::string, int> counts;
  for (int i = 0; i < samples; ++i) counts[sample_binomial_subcube({1, p}, rng).to_string()]++;
  const double expected_star = samples * p;
  const double expected_bit = samples * (1.0 - p) / 2.0;
  double chi2 = 0.0;
  chi2 += std::pow(counts["*"] - expected_star, 2) / expected_star;
  chi2 += std::pow(counts["0"] - expected_bit, 2) / expected_bit;
  chi2 += std::pow(counts["1"] - expected_bit, 2) / expected_bit;
  CHECK(chi2 < 13.8155);  // 99.9% quantile, 2 degrees of freedom
}

TEST_CASE("uniform sampler dimension is always exactly k") {
  Rng rng(SeedSpec{7, 3});
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(rng.next_below(60));
    const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d) + 1));
    CHECK(sample_uniform_subcube({d, k}, rng).dimension() == k);
  }
  CHECK(sample_uniform_subcube({9, 9}, rng) == Subcube(9));
  CHECK(sample_uniform_subcube({9, 0}, rng).dimension() == 0);
}

TEST_CASE("uniform sampler is uniform over the d=2, k=1 subcubes") {
  const int samples = 100'000;
  Rng rng(SeedSpec{7, 4});
  std::map<std::string, int> counts;
  for (int i = 0; i < samples; ++i) counts[sample_uniform_subcube({2, 1}, rng).to_string()]++;
  CHECK(counts.size() == 4);
  const double expected = samples / 4.0;
  const double sigma = std::sqrt(samples * 0.25 * 0.75);
  double chi2 = 0.0;
  for (const char* cube : {"0*", "1*", "*0", "*1"}) {
    CHECK(std::abs(counts[cube] - expected) <= 3 * sigma);
    chi2 += std::pow(counts[cube] - expected, 2) / expected;
  }
  CHECK(chi2 < 16.266);  // 99.9% quantile, 3 degrees of freedom
}

TEST_CASE("sample_family determinism, prefix property and stream separation") {
  const ModelParams params = ModelParams::binomial(20, 0.5);
  const SeedSpec seed{42, 0};
  const FeatureFamily a = sample_family(params, 100, seed);
  const FeatureFamily b = sample_family(params, 100, seed);
  CHECK(a == b);
  CHECK(sample_family(params, 0, seed).size() == 0);

  const FeatureFamily longer = sample_family(params, 101, seed);
  for (int v = 0; v < 100; ++v) CHECK(longer.subcubes[v] == a.subcubes[v]);

  FeatureFamily grown = sample_family(params, 37, seed);
  extend_family(grown, params, 100, seed);
  CHECK(grown == a);

  std::ostringstream s1, s2;
  save_family(a, s1);
  save_family(sample_family(params, 100, seed.with_stream(1)), s2);
  CHECK(s1.str() != s2.str());
}

TEST_CASE("family text format round trips bit-exactly") {
  const FeatureFamily family = sample_family(ModelParams::uniform(9, 4), 25, SeedSpec{5, 9});
  std::ostringstream out;
  save_family(family, out);
  std::istringstream in(out.str());
  const FeatureFamily loaded = load_family(in);
  CHECK(loaded == family);
  CHECK(loaded.meta.model == "uniform");
  CHECK(loaded.meta.params == "4");
  CHECK(loaded.meta.seed == "5:9");
  std::ostringstream out2;
  save_family(loaded, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("family parser reports the offending line") {
  auto expect_error = [](const std::string& text, const char* fragment) {
    std::istringstream in(text);
    try {
      load_family(in);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("2 1 manual - -\n0x\n", "line 2");
  expect_error("2 2 manual - -\n0*\n***\n", "line 3");
  expect_error("2 2 manual - -\n0*\n", "line 3");
  expect_error("nonsense\n", "line 1");
}

TEST_CASE("empty and zero-dimensional families serialize") {
  FeatureFamily family;
  family.d = 0;
  family.subcubes.push_back(Subcube(0));
  std::ostringstream out;
  save_family(family, out);
  std::istringstream in(out.str());
  CHECK(load_family(in) == family);
}

TEST_CASE("fast binomial sampler matches the per-coordinate marginals") {
  const double p = 0.3;
  const int d = 70;  // crosses a word boundary
  FeatureFamily fast;
  fast.d = d;
  sample_binomial_family_fast(fast, {d, p}, 20000, SeedSpec{11, 0});
  CHECK(fast.size() == 20000);
  std::int64_t stars = 0, ones = 0, zeros = 0;
  for (const Subcube& s : fast.subcubes) {
    for (int c = 0; c < d; ++c) {
      if (!s.is_fixed(c))
        ++stars;
      else if (s.fixed_value(c))
        ++ones;
      else
        ++zeros;
    }
  }
  const double total = static_cast<double>(fast.size()) * d;
  const double expected_star = total * p;
  const double expected_bit = total * (1.0 - p) / 2.0;
  double chi2 = 0.0;
  chi2 += std::pow(stars - expected_star, 2) / expected_star;
  chi2 += std::pow(zeros - expected_bit, 2) / expected_bit;
  chi2 += std::pow(ones - expected_bit, 2) / expected_bit;
  CHECK(chi2 < 13.8155);

  // Deterministic and extendable in blocks.
  FeatureFamily again;
  again.d = d;
  sample_binomial_family_fast(again, {d, p}, 128, SeedSpec{11, 0});
  FeatureFamily grown;
  grown.d = d;
  sample_binomial_family_fast(grown, {d, p}, 64, SeedSpec{11, 0});
  sample_binomial_family_fast(grown, {d, p}, 128, SeedSpec{11, 0});
  for (int v = 0; v < 128; ++v) {
    CHECK(again.subcubes[v] == fast.subcubes[v]);
    CHECK(grown.subcubes[v] == again.subcubes[v]);
  }
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams::binomial(5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::binomial(5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::uniform(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::uniform(5, -1), std::invalid_argument);
  CHECK(ModelParams::uniform(5, 5).describe() == "uniform d=5 k=5");
}
