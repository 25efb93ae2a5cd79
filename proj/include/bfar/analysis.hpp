#pragma once

#include <cstdint>
#include <vector>

#include "bfar/types.hpp"

namespace bfar::analysis {

/// Closed-form and Monte Carlo detection statistics under the square-law
/// exponential noise model: samples have PDF (1/2λ)exp(-x/2λ), i.e. MEAN 2λ,
/// with λ = μ under H0 and λ = μ(1+S) under H1. Every sampler in this
/// project uses mean 2μ / 2μ(1+S); an off-by-two here would silently bias
/// all validation, so the parameterization is fixed once, here.

struct DetectionStats {
  double pfa = 0.0;
  double pd = 0.0;
  double pfa_upper_bound = 0.0;
  long long trials = 0;          // MC only
  double pfa_halfwidth = 0.0;    // 95% Wilson half-widths, MC only
  double pd_halfwidth = 0.0;
};

/// PFA for threshold T = a*Z + b with Z the sum of w reference samples:
/// (1+a)^(-w) * exp(-b / 2μ).
double pfa_closed_form(double a, double b, double mu, int w);

/// Supremum of the PFA over μ (attained as μ → ∞ or b = 0): (1+a)^(-w).
double pfa_upper_bound(double a, int w);

/// PD under H1 with target SNR S: (1 + a/(1+S))^(-w) * exp(-b / (2μ(1+S))).
double pd_closed_form(double a, double b, double mu, double s, int w);

/// Inverts pfa_upper_bound: a = pfa_ub^(-1/w) - 1.
double solve_a_for_bound(double pfa_ub, int w);

struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;
};

/// 95% Wilson score interval (z = 1.96); Wald breaks down at the extreme
/// probabilities this detector runs at.
WilsonInterval wilson_interval(long long successes, long long trials,
                               double z = 1.959963984540054);

/// Draws `trials` independent windows: w reference cells ~ Exp(mean 2μ),
/// forms T = a*ΣX + b, then tests one CUT drawn under H0 (for pfa) and one
/// under H1 with SNR s (for pd). Each trial derives its generator from
/// (seed, trial index), so the result is bit-identical under any
/// parallel schedule. Guard cells are excluded from Z by definition; under
/// the iid model they carry no information, so none are drawn.
DetectionStats mc_estimate(double a, double b, double mu, double s, int w,
                           int guard, long long trials, std::uint64_t seed);
DetectionStats mc_estimate_serial(double a, double b, double mu, double s,
                                  int w, int guard, long long trials,
                                  std::uint64_t seed);

enum class SweepParam { Scale, Offset };

struct RocPoint {
  double param = 0.0;
  double pfa = 0.0;
  double pd = 0.0;
};

/// Closed-form (pfa, pd) pairs while sweeping a (with b fixed) or b (with a
/// fixed). Monotone non-increasing in the swept parameter.
std::vector<RocPoint> roc_curve(SweepParam which,
                                const std::vector<double>& values,
                                double fixed_value, double mu, double s,
                                int w);

}  // namespace bfar::analysis
