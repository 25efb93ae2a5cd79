#include "bfar/analysis.hpp"

#include <cmath>

#include "bfar/rng.hpp"

namespace bfar::analysis {

namespace {

void check_domain(double a, double b, double mu, double s, int w) {
  if (!(a >= 0.0)) throw DomainError("a must be >= 0");
  if (!(b >= 0.0)) throw DomainError("b must be >= 0");
  if (!(mu > 0.0)) throw DomainError("mu must be > 0");
  if (!(s >= 0.0)) throw DomainError("s must be >= 0");
  if (w < 1) throw DomainError("w must be >= 1");
}

}  // namespace

double pfa_closed_form(double a, double b, double mu, int w) {
  check_domain(a, b, mu, 0.0, w);
  return std::pow(1.0 + a, -w) * std::exp(-b / (2.0 * mu));
}

double pfa_upper_bound(double a, int w) {
  if (!(a >= 0.0)) throw DomainError("a must be >= 0");
  if (w < 1) throw DomainError("w must be >= 1");
  return std::pow(1.0 + a, -w);
}

double pd_closed_form(double a, double b, double mu, double s, int w) {
  check_domain(a, b, mu, s, w);
  return std::pow(1.0 + a / (1.0 + s), -w) *
         std::exp(-b / (2.0 * mu * (1.0 + s)));
}

double solve_a_for_bound(double pfa_ub, int w) {
  if (!(pfa_ub > 0.0) || pfa_ub > 1.0) {
    throw DomainError("pfa_ub must be in (0, 1]");
  }
  if (w < 1) throw DomainError("w must be >= 1");
  return std::pow(pfa_ub, -1.0 / w) - 1.0;
}

WilsonInterval wilson_interval(long long successes, long long trials,
                               double z) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (successes < 0 || successes > trials) {
    throw DomainError("successes out of range");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  WilsonInterval iv;
  iv.center = (p + z2n / 2.0) / (1.0 + z2n);
  iv.halfwidth = (z / (1.0 + z2n)) *
                 std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return iv;
}

namespace {

DetectionStats mc_impl(double a, double b, double mu, double s, int w,
                       int guard, long long trials, std::uint64_t seed,
                       bool parallel) {
  check_domain(a, b, mu, s, w);
  if (guard < 0) throw DomainError("guard must be >= 0");
  if (trials < 10000) throw DomainError("trials must be >= 1e4");

  const double ref_mean = 2.0 * mu;
  const double h1_mean = 2.0 * mu * (1.0 + s);
  long long hits_h0 = 0;
  long long hits_h1 = 0;

#pragma omp parallel for schedule(static) reduction(+ : hits_h0, hits_h1) \
    if (parallel)
  for (long long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    double z = 0.0;
    for (int i = 0; i < w; ++i) z += rng.exponential(ref_mean);
    const double threshold = a * z + b;
    if (rng.exponential(ref_mean) > threshold) ++hits_h0;
    if (rng.exponential(h1_mean) > threshold) ++hits_h1;
  }

  DetectionStats stats;
  stats.trials = trials;
  stats.pfa = static_cast<double>(hits_h0) / static_cast<double>(trials);
  stats.pd = static_cast<double>(hits_h1) / static_cast<double>(trials);
  stats.pfa_upper_bound = pfa_upper_bound(a, w);
  stats.pfa_halfwidth = wilson_interval(hits_h0, trials).halfwidth;
  stats.pd_halfwidth = wilson_interval(hits_h1, trials).halfwidth;
  return stats;
}

}  // namespace

DetectionStats mc_estimate(double a, double b, double mu, double s, int w,
                           int guard, long long trials, std::uint64_t seed) {
  return mc_impl(a, b, mu, s, w, guard, trials, seed, true);
}

DetectionStats mc_estimate_serial(double a, double b, double mu, double s,
                                  int w, int guard, long long trials,
                                  std::uint64_t seed) {
  return mc_impl(a, b, mu, s, w, guard, trials, seed, false);
}

std::vector<RocPoint> roc_curve(SweepParam which,
                                const std::vector<double>& values,
                                double fixed_value, double mu, double s,
                                int w) {
  if (values.empty()) throw DomainError("sweep values must be non-empty");
  std::vector<RocPoint> curve;
  curve.reserve(values.size());
  for (double v : values) {
    const double a = which == SweepParam::Scale ? v : fixed_value;
    const double b = which == SweepParam::Offset ? v : fixed_value;
    curve.push_back(
        {v, pfa_closed_form(a, b, mu, w), pd_closed_form(a, b, mu, s, w)});
  }
  return curve;
}

}  // namespace bfar::analysis
