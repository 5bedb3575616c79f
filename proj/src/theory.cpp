#include "rsig/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsig::theory {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// x log y with the 0 log 0 = 0 convention.
double xlogy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(y);
}

// log(2 ((1+p)/2)^s - p^s), stable for large s via y = 2p/(1+p) < 1.
double log_q1(int s, double p) {
  const double h = (1.0 + p) / 2.0;
  if (p >= 1.0) return 0.0;
  if (s == 0) return 0.0;  // empty product: probability 1
  const double y = p / h;
  return s * std::log(h) + std::log(2.0 - std::pow(y, s));
}

}  // namespace

double clique_prob_binomial(int s, int d, double p) {
  require(s >= 1 && d >= 0 && p >= 0.0 && p <= 1.0, "clique_prob_binomial: bad arguments");
  return std::exp(d * log_q1(s, p));
}

double t_ks_binomial(int s, double p) {
  require(s >= 1 && p >= 0.0 && p <= 1.0, "t_ks_binomial: bad arguments");
  if (p >= 1.0) return 0.0;  // all-star cubes always meet
  return -log_q1(s, p) / s;
}

double joint_clique_prob(int s, int i, int d, double p) {
  require(s >= 1 && i >= 0 && i <= s && d >= 0 && p >= 0.0 && p <= 1.0,
          "joint_clique_prob: bad arguments");
  const double h = (1.0 + p) / 2.0;
  if (p >= 1.0) return 1.0;
  const double y = p / h;
  const double inner = 2.0 + 2.0 * std::pow(y, i) - 4.0 * std::pow(y, s) + std::pow(y, 2 * s - i);
  const double log_b = (2 * s - i) * std::log(h) + std::log(inner);
  return std::exp(d * log_b);
}

double t_cover_binomial(double p) {
  require(p >= 0.0 && p <= 1.0, "t_cover_binomial: p must be in [0,1]");
  return std::log(2.0 / (1.0 + p));
}

double t_cover_uniform(double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "t_cover_uniform: alpha must be in [0,1]");
  return (1.0 - alpha) * std::log(2.0);
}

double alpha_s(double p, int s) {
  require(s >= 1 && p >= 0.0 && p <= 1.0, "alpha_s: bad arguments");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return p * std::exp(log_q1(s - 1, p) - log_q1(s, p));
}

double alpha_s_inverse(double alpha, int s) {
  require(s >= 1 && alpha >= 0.0 && alpha <= 1.0, "alpha_s_inverse: bad arguments");
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // alpha_s is strictly increasing, so plain bisection converges.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (alpha_s(mid, s) < alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double t_alpha_ks(double alpha, double p, int s) {
  require(s >= 1 && alpha >= 0.0 && alpha <= 1.0 && p > 0.0 && p < 1.0,
          "t_alpha_ks: bad arguments");
  const double h = (1.0 + p) / 2.0;
  const double star_term = xlogy(alpha, p / alpha) + alpha * log_q1(s - 1, p);
  const double fixed_term =
      xlogy(1.0 - alpha, (1.0 - p) / (1.0 - alpha)) + (1.0 - alpha) * (s - 1) * std::log(h);
  return -(star_term + fixed_term) / s;
}

double t_ks_uniform(double alpha, int s) {
  require(s >= 1 && alpha > 0.0 && alpha < 1.0, "t_ks_uniform: alpha must be in (0,1)");
  const double p = alpha_s_inverse(alpha, s);
  return t_ks_binomial(s, p) + xlogy(alpha, p / alpha) +
         xlogy(1.0 - alpha, (1.0 - p) / (1.0 - alpha));
}

double f_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "f_alpha: alpha must be in (0,1)");
  // Sign fixed so that the edge probability decays as exp(-f(alpha) d):
  // f > 0 on (0,1) and the exact finite-d exponents converge to it.
  const double r = std::sqrt((1.0 - alpha) * (1.0 - alpha) + alpha * alpha);
  double f = -2.0 * (xlogy(alpha, alpha) + xlogy(1.0 - alpha, 1.0 - alpha));
  f += xlogy(r - 1.0 + alpha, r - 1.0 + alpha);
  f += 2.0 * xlogy(1.0 - r, 1.0 - r);
  f += xlogy(r - alpha, 2.0 * (r - alpha));
  return f;
}

double log_choose(double n, double r) {
  if (r < 0.0 || n < 0.0 || r > n) return -kInf;
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double exact_uniform_edge_prob(int d, int k) {
  require(d >= 0 && k >= 0 && k <= d, "exact_uniform_edge_prob: need 0 <= k <= d");
  const double log_total = log_choose(d, k);
  double prob = 0.0;
  for (int j = std::max(0, 2 * k - d); j <= k; ++j) {
    const double log_w = log_choose(k, j) + log_choose(d - k, k - j) - log_total;
    // Coordinates fixed in both subcubes (d - 2k + j of them) must agree.
    prob += std::exp(log_w - (d - 2 * k + j) * std::log(2.0));
  }
  return prob;
}

double binomial_edge_prob(int d, double p) {
  require(d >= 0 && p >= 0.0 && p <= 1.0, "binomial_edge_prob: bad arguments");
  return std::exp(d * std::log1p(-(1.0 - p) * (1.0 - p) / 2.0));
}

double c4_prob(int d, double p) {
  require(d >= 0 && p >= 0.0 && p <= 1.0, "c4_prob: bad arguments");
  const double h = (1.0 + p) / 2.0;
  const double per_coord = 2.0 * std::pow(h, 4) - std::pow(p, 4) + p * p * (1.0 - p) * (1.0 - p);
  return std::exp(d * std::log(per_coord));
}

double expected_uncovered_binomial(double n, int d, double p) {
  require(n >= 0.0 && d >= 0 && p >= 0.0 && p <= 1.0, "expected_uncovered_binomial: bad arguments");
  const double h = (1.0 + p) / 2.0;
  const double point_prob = std::exp(d * std::log(h));
  return std::exp(d * std::log(2.0) + n * std::log1p(-point_prob));
}

double pair_uncovered_prob_binomial(double n, int d, double p, int i) {
  require(n >= 0.0 && d >= 0 && p >= 0.0 && p <= 1.0 && i >= 0 && i <= d,
          "pair_uncovered_prob_binomial: bad arguments");
  const double h = (1.0 + p) / 2.0;
  const double single = std::exp(d * std::log(h));
  const double both = (i == 0) ? single : std::exp(xlogy(i, p) + (d - i) * std::log(h));
  return std::exp(n * std::log1p(both - 2.0 * single));
}

double expected_uncovered_uniform(double n, int d, int k) {
  require(n >= 0.0 && d >= 0 && k >= 0 && k <= d, "expected_uncovered_uniform: bad arguments");
  const double point_prob = std::exp2(static_cast<double>(k - d));
  return std::exp(d * std::log(2.0) + n * std::log1p(-point_prob));
}

double pair_uncovered_prob_uniform(double n, int d, int k, int i) {
  require(n >= 0.0 && d >= 0 && k >= 0 && k <= d && i >= 0 && i <= d,
          "pair_uncovered_prob_uniform: bad arguments");
  const double point_prob = std::exp2(static_cast<double>(k - d));
  const double log_ratio = log_choose(d - i, k - i) - log_choose(d, k);
  const double both = std::isinf(log_ratio) ? 0.0 : std::exp(log_ratio) * point_prob;
  return std::exp(n * std::log1p(both - 2.0 * point_prob));
}

double expected_volume(int d, double p) {
  require(d >= 0 && p >= 0.0 && p <= 1.0, "expected_volume: bad arguments");
  return std::exp(d * std::log1p(p));
}

double volume_variance(double n, int d, double p) {
  require(n >= 0.0 && d >= 0 && p >= 0.0 && p <= 1.0, "volume_variance: bad arguments");
  // n ((1+3p)^d - (1+p)^{2d}), written so the p=0 and p=1 cases are exact.
  const double log_sq = 2.0 * d * std::log1p(p);
  const double diff = d * (std::log1p(3.0 * p) - 2.0 * std::log1p(p));
  return n * std::exp(log_sq) * std::expm1(diff);
}

double lemma_a_gap(double y, int i, int s) {
  require(y >= 0.0 && y <= 1.0 && i >= 0 && i <= s, "lemma_a_gap: bad arguments");
  // Both sides grow like 4^s, so the raw difference loses all precision; the
  // gap is compared in log space and reported relative to the left side:
  // 1 - (2+2y^i-4y^s+y^{2s-i})^s / (2-y^s)^{2s-i}.
  const double ys = std::pow(y, s);
  const double log_lhs = (2 * s - i) * std::log(2.0 - ys);
  const double inner = 2.0 + 2.0 * std::pow(y, i) - 4.0 * ys + std::pow(y, 2 * s - i);
  const double log_rhs = s * std::log(inner);
  return -std::expm1(log_rhs - log_lhs);
}

std::string Regime::describe() const {
  switch (kind) {
    case Kind::kFixed:
      return "fixed(" + std::to_string(s) + ")";
    case Kind::kBoundary:
      return "boundary(" + std::to_string(s) + ")";
    case Kind::kPolylog:
      return "polylog(gamma=" + std::to_string(value) + ")";
    case Kind::kExponential:
      return "exponential(c=" + std::to_string(value) + ")";
  }
  return {};
}

Regime clique_regime(double x, const ModelParams& params, int d) {
  require(x >= 0.0, "clique_regime: x must be >= 0");
  const bool binomial = params.is_binomial();
  if (binomial)
    require(params.as_binomial().p < 1.0, "clique_regime: p must be < 1");
  else
    require(params.as_uniform().k > 0 && params.as_uniform().k < params.as_uniform().d,
            "clique_regime: need 0 < k < d");
  const double cover = binomial ? t_cover_binomial(params.as_binomial().p)
                                : t_cover_uniform(static_cast<double>(params.as_uniform().k) /
                                                  static_cast<double>(params.as_uniform().d));
  const auto ladder = [&](std::int64_t s) {
    if (binomial) return t_ks_binomial(static_cast<int>(s), params.as_binomial().p);
    return t_ks_uniform(static_cast<double>(params.as_uniform().k) /
                            static_cast<double>(params.as_uniform().d),
                        static_cast<int>(s));
  };

  if (x >= cover) {
    const double excess = x - cover;
    if (d > 0 && excess > 0.0) {
      const double gamma = excess * d / std::log(static_cast<double>(std::max(d, 3)));
      if (gamma <= 10.0) return {Regime::Kind::kPolylog, 0, gamma};
    }
    return {Regime::Kind::kExponential, 0, excess};
  }

  // Largest s with t_{K_s} <= x; the ladder increases strictly toward cover.
  std::int64_t lo = 1, hi = 2;
  constexpr std::int64_t kSMax = std::int64_t{1} << 40;
  while (hi < kSMax && ladder(hi) <= x) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ladder(mid) <= x ? lo : hi) = mid;
  }

  const double window = (d > 0) ? (2.0 * std::log(static_cast<double>(std::max<std::int64_t>(lo, 2))) +
                                   std::log(static_cast<double>(d))) /
                                      d
                                : 1e-12;
  // K_1 is always present, so the bottom of the ladder is not a transition.
  if (lo >= 2 && x - ladder(lo) <= window) return {Regime::Kind::kBoundary, lo, 0.0};
  if (hi < kSMax && ladder(hi) - x <= window) return {Regime::Kind::kBoundary, hi, 0.0};
  return {Regime::Kind::kFixed, lo, 0.0};
}

}  // namespace rsig::theory
