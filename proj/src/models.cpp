#include "rsig/models.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pattern_set.hpp"

namespace rsig {

namespace {

std::string format_double(double x) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string seed_string(SeedSpec seed) {
  return std::to_string(seed.master_seed) + ":" + std::to_string(seed.stream_id);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("family parse error at line " + std::to_string(line) + ": " + what);
}

// Transposes a 64x64 bit matrix in place; element (row r, bit c) moves to
// (row c, bit r). Recursive block swaps.
void transpose64(std::uint64_t m[64]) {
  std::uint64_t mask = 0x00000000ffffffffull;
  for (int j = 32; j != 0; j >>= 1, mask ^= mask << j) {
    for (int k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      const std::uint64_t t = ((m[k] >> j) ^ m[k | j]) & mask;
      m[k | j] ^= t;
      m[k] ^= t << j;
    }
  }
}

// One word of iid Bernoulli(p) bits: compares a lane-wise uniform bit stream
// against the binary expansion of p, MSB first.
std::uint64_t bernoulli_word(double p, Rng& rng) {
  if (p >= 1.0) return ~std::uint64_t{0};
  if (p <= 0.0) return 0;
  const std::uint64_t digits = static_cast<std::uint64_t>(std::ldexp(p, 53));
  std::uint64_t success = 0;
  std::uint64_t undecided = ~std::uint64_t{0};
  for (int k = 52; k >= 0 && undecided; --k) {
    const std::uint64_t r = rng.next_u64();
    if ((digits >> k) & 1) {
      success |= undecided & ~r;
      undecided &= r;
    } else {
      undecided &= ~r;
    }
  }
  return success;
}

constexpr std::uint64_t kFastPathTag = 0x66617374626c6bull;  // "fastblk"

}  // namespace

void ModelParams::validate() const {
  if (is_binomial()) {
    const auto& b = as_binomial();
    if (b.d < 0) throw std::invalid_argument("binomial model: d must be >= 0");
    if (!(b.p >= 0.0 && b.p <= 1.0)) throw std::invalid_argument("binomial model: p must be in [0,1]");
  } else {
    const auto& u = as_uniform();
    if (u.d < 0) throw std::invalid_argument("uniform model: d must be >= 0");
    if (u.k < 0 || u.k > u.d) throw std::invalid_argument("uniform model: need 0 <= k <= d");
  }
}

std::string ModelParams::describe() const {
  if (is_binomial())
    return "binomial d=" + std::to_string(d()) + " p=" + format_double(as_binomial().p);
  return "uniform d=" + std::to_string(d()) + " k=" + std::to_string(as_uniform().k);
}

Subcube sample_binomial_subcube(const BinomialParams& params, Rng& rng) {
  Subcube s(params.d);
  const double fix_one = params.p + (1.0 - params.p) / 2.0;
  for (int c = 0; c < params.d; ++c) {
    const double u = rng.next_u01();
    if (u < params.p) continue;  // free coordinate
    s.fix(c, u >= fix_one);
  }
  return s;
}

Subcube sample_uniform_subcube(const UniformParams& params, Rng& rng) {
  const int d = params.d;
  std::vector<int> coords(static_cast<std::size_t>(d));
  std::iota(coords.begin(), coords.end(), 0);
  for (int i = 0; i < params.k; ++i) {
    const std::uint64_t j =
        static_cast<std::uint64_t>(i) + rng.next_below(static_cast<std::uint64_t>(d - i));
    std::swap(coords[static_cast<std::size_t>(i)], coords[j]);
  }
  Subcube s(d);
  std::vector<bool> star(static_cast<std::size_t>(d), false);
  for (int i = 0; i < params.k; ++i) star[static_cast<std::size_t>(coords[static_cast<std::size_t>(i)])] = true;
  for (int c = 0; c < d; ++c)
    if (!star[static_cast<std::size_t>(c)]) s.fix(c, rng.next_u64() >> 63);
  return s;
}

static Subcube sample_one(const ModelParams& params, SeedSpec seed, std::uint64_t v) {
  Rng rng(seed, v);
  if (params.is_binomial()) return sample_binomial_subcube(params.as_binomial(), rng);
  return sample_uniform_subcube(params.as_uniform(), rng);
}

FeatureFamily sample_family(const ModelParams& params, std::uint64_t n, SeedSpec seed) {
  FeatureFamily family;
  family.d = params.d();
  family.meta.model = params.is_binomial() ? "binomial" : "uniform";
  family.meta.params = params.is_binomial() ? format_double(params.as_binomial().p)
                                            : std::to_string(params.as_uniform().k);
  family.meta.seed = seed_string(seed);
  extend_family(family, params, n, seed);
  return family;
}

void extend_family(FeatureFamily& family, const ModelParams& params, std::uint64_t n,
                   SeedSpec seed) {
  if (family.d != params.d()) throw std::invalid_argument("extend_family: dimension mismatch");
  if (n > family.subcubes.capacity() && n > family.subcubes.size() + 64)
    family.subcubes.reserve(n);
  for (std::uint64_t v = family.subcubes.size(); v < n; ++v)
    family.subcubes.push_back(sample_one(params, seed, v));
}

void sample_binomial_family_fast(FeatureFamily& family, const BinomialParams& params,
                                 std::uint64_t n, SeedSpec seed) {
  if (family.d != params.d) throw std::invalid_argument("sample_binomial_family_fast: dimension mismatch");
  const int d = params.d;
  const std::size_t start = family.subcubes.size();
  if (n <= start) return;
  family.subcubes.resize(n, Subcube(d));
  Rng base = Rng(seed).child(kFastPathTag);
  std::array<std::uint64_t, 64> stars{}, values{};
  std::vector<BitVec> fx, vv;
  for (std::uint64_t block = start / 64; block * 64 < n; ++block) {
    Rng rng = base.child(block);
    const std::uint64_t lane0 = block * 64;
    fx.assign(64, BitVec(d));
    vv.assign(64, BitVec(d));
    for (int cw = 0; cw * 64 < d; ++cw) {
      const int width = std::min(64, d - cw * 64);
      for (int c = 0; c < width; ++c) {
        const std::uint64_t star = bernoulli_word(params.p, rng);
        stars[static_cast<std::size_t>(c)] = star;
        values[static_cast<std::size_t>(c)] = rng.next_u64() & ~star;
      }
      for (int c = width; c < 64; ++c) {
        stars[static_cast<std::size_t>(c)] = ~std::uint64_t{0};
        values[static_cast<std::size_t>(c)] = 0;
      }
      // After transposing, row v holds the per-coordinate bits of lane v.
      transpose64(stars.data());
      transpose64(values.data());
      const std::uint64_t tail =
          (width == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
      for (int v = 0; v < 64; ++v) {
        fx[static_cast<std::size_t>(v)].words()[cw] = ~stars[static_cast<std::size_t>(v)] & tail;
        vv[static_cast<std::size_t>(v)].words()[cw] = values[static_cast<std::size_t>(v)] & tail;
      }
    }
    for (int v = 0; v < 64 && lane0 + static_cast<std::uint64_t>(v) < n; ++v) {
      const std::uint64_t lane = lane0 + static_cast<std::uint64_t>(v);
      if (lane < start) continue;
      family.subcubes[lane] =
          Subcube(std::move(fx[static_cast<std::size_t>(v)]), std::move(vv[static_cast<std::size_t>(v)]));
    }
  }
}

namespace internal {

namespace {

void sample_binomial_rows(PatternSet& ps, const BinomialParams& params, std::uint64_t n,
                          SeedSpec seed, const Deadline* deadline) {
  const double p = params.p;
  const double fix_one = p + (1.0 - p) / 2.0;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (deadline && (v & 0xffff) == 0 && deadline->expired())
      throw DeadlineExceeded("sampling exceeded the experiment budget");
    Rng rng(seed, v);
    std::uint64_t* fw = ps.fixed.data() + v * ps.wpr;
    std::uint64_t* vw = ps.value.data() + v * ps.wpr;
    for (int c = 0; c < params.d; ++c) {
      const double u = rng.next_u01();
      if (u < p) continue;
      fw[c >> 6] |= std::uint64_t{1} << (c & 63);
      if (u >= fix_one) vw[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
  }
}

void sample_binomial_rows_fast(PatternSet& ps, const BinomialParams& params, std::uint64_t n,
                               SeedSpec seed, const Deadline* deadline) {
  Rng base = Rng(seed).child(kFastPathTag);
  std::array<std::uint64_t, 64> stars{}, values{};
  for (std::uint64_t block = 0; block * 64 < n; ++block) {
    if (deadline && (block & 0x3ff) == 0 && deadline->expired())
      throw DeadlineExceeded("sampling exceeded the experiment budget");
    Rng rng = base.child(block);
    const std::uint64_t lane0 = block * 64;
    for (int cw = 0; cw * 64 < params.d; ++cw) {
      const int width = std::min(64, params.d - cw * 64);
      for (int c = 0; c < width; ++c) {
        const std::uint64_t star = bernoulli_word(params.p, rng);
        stars[static_cast<std::size_t>(c)] = star;
        values[static_cast<std::size_t>(c)] = rng.next_u64() & ~star;
      }
      for (int c = width; c < 64; ++c) {
        stars[static_cast<std::size_t>(c)] = ~std::uint64_t{0};
        values[static_cast<std::size_t>(c)] = 0;
      }
      transpose64(stars.data());
      transpose64(values.data());
      const std::uint64_t tail =
          (width == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
      const std::uint64_t limit = std::min<std::uint64_t>(64, n - lane0);
      for (std::uint64_t v = 0; v < limit; ++v) {
        ps.fixed[(lane0 + v) * ps.wpr + static_cast<std::size_t>(cw)] =
            ~stars[static_cast<std::size_t>(v)] & tail;
        ps.value[(lane0 + v) * ps.wpr + static_cast<std::size_t>(cw)] =
            values[static_cast<std::size_t>(v)] & tail;
      }
    }
  }
}

void sample_uniform_rows(PatternSet& ps, const UniformParams& params, std::uint64_t n,
                         SeedSpec seed, const Deadline* deadline) {
  const int d = params.d;
  std::vector<int> coords(static_cast<std::size_t>(d));
  std::vector<bool> star(static_cast<std::size_t>(d));
  for (std::uint64_t v = 0; v < n; ++v) {
    if (deadline && (v & 0xffff) == 0 && deadline->expired())
      throw DeadlineExceeded("sampling exceeded the experiment budget");
    Rng rng(seed, v);
    std::iota(coords.begin(), coords.end(), 0);
    for (int i = 0; i < params.k; ++i) {
      const std::uint64_t j =
          static_cast<std::uint64_t>(i) + rng.next_below(static_cast<std::uint64_t>(d - i));
      std::swap(coords[static_cast<std::size_t>(i)], coords[j]);
    }
    star.assign(static_cast<std::size_t>(d), false);
    for (int i = 0; i < params.k; ++i)
      star[static_cast<std::size_t>(coords[static_cast<std::size_t>(i)])] = true;
    std::uint64_t* fw = ps.fixed.data() + v * ps.wpr;
    std::uint64_t* vw = ps.value.data() + v * ps.wpr;
    for (int c = 0; c < d; ++c) {
      if (star[static_cast<std::size_t>(c)]) continue;
      fw[c >> 6] |= std::uint64_t{1} << (c & 63);
      if (rng.next_u64() >> 63) vw[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
  }
}

}  // namespace

PatternSet sample_pattern_set(const ModelParams& params, std::uint64_t n, SeedSpec seed,
                              bool fast_sampler, const Deadline* deadline) {
  PatternSet ps(params.d());
  ps.n = n;
  ps.fixed.assign(n * ps.wpr, 0);
  ps.value.assign(n * ps.wpr, 0);
  if (params.is_binomial()) {
    if (fast_sampler)
      sample_binomial_rows_fast(ps, params.as_binomial(), n, seed, deadline);
    else
      sample_binomial_rows(ps, params.as_binomial(), n, seed, deadline);
  } else {
    sample_uniform_rows(ps, params.as_uniform(), n, seed, deadline);
  }
  return ps;
}

}  // namespace internal

void save_family(const FeatureFamily& family, std::ostream& out) {
  out << family.d << ' ' << family.size() << ' ' << family.meta.model << ' '
      << family.meta.params << ' ' << family.meta.seed << '\n';
  for (const Subcube& s : family.subcubes) out << s.to_string() << '\n';
}

void save_family(const FeatureFamily& family, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_family(family, out);
}

FeatureFamily load_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(1, "missing header");
  std::istringstream header(line);
  FeatureFamily family;
  long long n = 0;
  if (!(header >> family.d >> n >> family.meta.model >> family.meta.params >> family.meta.seed))
    parse_fail(1, "expected \"d n model params seed\"");
  if (family.d < 0 || n < 0) parse_fail(1, "d and n must be non-negative");
  std::string trailing;
  if (header >> trailing) parse_fail(1, "unexpected trailing field");
  family.subcubes.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const std::size_t lineno = static_cast<std::size_t>(i) + 2;
    if (!std::getline(in, line)) parse_fail(lineno, "missing row");
    Subcube s;
    try {
      s = Subcube::parse(line);
    } catch (const std::invalid_argument&) {
      parse_fail(lineno, "row characters must be 0, 1 or *");
    }
    if (s.d() != family.d)
      parse_fail(lineno, "row length " + std::to_string(s.d()) + " does not match d=" +
                             std::to_string(family.d));
    family.subcubes.push_back(std::move(s));
  }
  return family;
}

FeatureFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_family(in);
}

}  // namespace rsig
