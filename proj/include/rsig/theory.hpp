#pragma once

#include <cstdint>
#include <string>

#include "rsig/models.hpp"

namespace rsig::theory {

/// Probability that s independent binomial subcubes of Q_d are pairwise
/// intersecting (equivalently, by the Helly property, share a point):
/// (2((1+p)/2)^s - p^s)^d, evaluated in log space.
double clique_prob_binomial(int s, int d, double p);

/// Clique threshold exponent t_{K_s}(p) = -(1/s) log(2((1+p)/2)^s - p^s).
/// Continuous limit 0 at p = 1.
double t_ks_binomial(int s, double p);

/// Probability that two s-sets of vertices sharing exactly i vertices both
/// induce cliques.
double joint_clique_prob(int s, int i, int d, double p);

/// Covering threshold exponents: log(2/(1+p)) and (1-alpha) log 2.
double t_cover_binomial(double p);
double t_cover_uniform(double alpha);

/// Limiting dimension fraction of feature subcubes in the first s-cliques:
/// alpha_s(p) = p q(s-1) / q(s) with q(s) = 2((1+p)/2)^s - p^s. Strictly
/// increasing bijection of [0,1]; the inverse is found by bisection.
double alpha_s(double p, int s);
double alpha_s_inverse(double alpha, int s);

/// Dimension-resolved clique exponent; minimized over alpha exactly at
/// alpha_s(p), where it equals t_ks_binomial(s, p).
double t_alpha_ks(double alpha, double p, int s);

/// Uniform-model clique threshold T_{K_s}(alpha), expressed through the
/// conjugate binomial parameter p = alpha_s^{-1}(alpha).
double t_ks_uniform(double alpha, int s);

/// Asymptotic decay exponent of the uniform-model edge probability:
/// P(two uniform floor(alpha d)-subcubes meet) = exp(-f(alpha) d + o(d)).
double f_alpha(double alpha);

/// Exact probability that two independent uniform k-dimensional subcubes of
/// Q_d intersect, by conditioning on the star-set overlap.
double exact_uniform_edge_prob(int d, int k);

/// Exact binomial edge density (1 - (1-p)^2/2)^d and the labeled 4-cycle
/// probability (2((1+p)/2)^4 - p^4 + p^2(1-p)^2)^d.
double binomial_edge_prob(int d, double p);
double c4_prob(int d, double p);

/// Expected number of uncovered points, 2^d (1 - ((1+p)/2)^d)^n, and the
/// probability that two points at Hamming distance i are both uncovered.
double expected_uncovered_binomial(double n, int d, double p);
double pair_uncovered_prob_binomial(double n, int d, double p, int i);

/// Uniform-model analogues; binomial coefficients with negative arguments
/// are zero.
double expected_uncovered_uniform(double n, int d, int k);
double pair_uncovered_prob_uniform(double n, int d, int k, int i);

/// Expected volume (1+p)^d of a binomial subcube and the variance of the
/// total volume of n of them, n((1+3p)^d - (1+p)^{2d}).
double expected_volume(int d, double p);
double volume_variance(double n, int d, double p);

/// Gap of the inequality (2+2y^i-4y^s+y^{2s-i})^s <= (2-y^s)^{2s-i},
/// normalized by the right-hand side (both sides grow like 4^s, so the raw
/// difference is numerically meaningless). Nonnegative on [0,1]; identically
/// zero at i = 0 and i = s.
double lemma_a_gap(double y, int i, int s);

/// log C(n, r) with the convention that out-of-range r gives -inf.
double log_choose(double n, double r);

/// Where a vertex-count exponent x sits relative to the clique ladder and
/// the covering threshold.
struct Regime {
  enum class Kind { kFixed, kBoundary, kPolylog, kExponential };
  Kind kind = Kind::kFixed;
  std::int64_t s = 1;    // clique size for kFixed / kBoundary
  double value = 0.0;    // gamma for kPolylog, c for kExponential

  std::string describe() const;
};

/// Classifies x against {t_{K_s}} and t_cover (or their uniform analogues).
/// Pass d > 0 to resolve the finite-d boundary and polylog windows; d = 0
/// classifies in the asymptotic sense.
Regime clique_regime(double x, const ModelParams& params, int d = 0);

}  // namespace rsig::theory
