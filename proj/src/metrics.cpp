#include "bfar/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace bfar::metrics {

namespace {

void check_matched(const Trajectory& est, const Trajectory& gt) {
  if (est.size() != gt.size()) {
    throw DomainError("trajectory length mismatch");
  }
  if (est.empty()) throw DomainError("empty trajectory");
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (std::abs(est[i].t - gt[i].t) > 1e-9) {
      throw DomainError("trajectory timestamp mismatch");
    }
  }
}

}  // namespace

double path_length(const Trajectory& trajectory) {
  double len = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    len += std::hypot(trajectory[i].x - trajectory[i - 1].x,
                      trajectory[i].y - trajectory[i - 1].y);
  }
  return len;
}

double ate_rmse(const Trajectory& estimate, const Trajectory& ground_truth) {
  check_matched(estimate, ground_truth);
  if (estimate.size() < 2) throw DomainError("need at least 2 poses");
  const SE2 est_origin = estimate[0].se2().inverse();
  const SE2 gt_origin = ground_truth[0].se2().inverse();
  double sq_sum = 0.0;
  for (std::size_t i = 1; i < estimate.size(); ++i) {
    const SE2 e = est_origin.compose(estimate[i].se2());
    const SE2 g = gt_origin.compose(ground_truth[i].se2());
    const double dx = e.x - g.x;
    const double dy = e.y - g.y;
    sq_sum += dx * dx + dy * dy;
  }
  return std::sqrt(sq_sum / static_cast<double>(estimate.size() - 1));
}

RelativeErrors kitti_relative_errors(const Trajectory& estimate,
                                     const Trajectory& ground_truth,
                                     std::span<const double> lengths) {
  check_matched(estimate, ground_truth);
  if (lengths.empty()) throw DomainError("lengths must be non-empty");
  for (double len : lengths) {
    if (!(len > 0.0)) throw DomainError("lengths must be positive");
  }
  const std::size_t n = ground_truth.size();

  std::vector<double> dist(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    dist[i] = dist[i - 1] + std::hypot(ground_truth[i].x - ground_truth[i - 1].x,
                                       ground_truth[i].y - ground_truth[i - 1].y);
  }
  const double max_len = *std::max_element(lengths.begin(), lengths.end());
  if (dist.back() < max_len) {
    throw DomainError("trajectory too short for the requested sub-sequence "
                      "lengths; scale them down");
  }

  double t_total = 0.0, r_total = 0.0;
  for (const double len : lengths) {
    double t_sum = 0.0, r_sum = 0.0;
    std::size_t count = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (j < i) j = i;
      while (j < n && dist[j] - dist[i] < len) ++j;
      if (j >= n) break;
      const SE2 rel_gt =
          ground_truth[i].se2().inverse().compose(ground_truth[j].se2());
      const SE2 rel_est =
          estimate[i].se2().inverse().compose(estimate[j].se2());
      const SE2 err = rel_est.inverse().compose(rel_gt);
      t_sum += std::hypot(err.x, err.y) / len * 100.0;
      r_sum += std::abs(err.yaw) * (180.0 / kPi) * (100.0 / len);
      ++count;
    }
    // dist.back() >= len, so the start at i = 0 always yields one entry.
    t_total += t_sum / static_cast<double>(count);
    r_total += r_sum / static_cast<double>(count);
  }
  return {t_total / static_cast<double>(lengths.size()),
          r_total / static_cast<double>(lengths.size())};
}

std::vector<double> desk_scale_lengths() {
  return {10, 20, 30, 40, 50, 60, 70, 80};
}

std::vector<double> paper_scale_lengths() {
  return {100, 200, 300, 400, 500, 600, 700, 800};
}

}  // namespace bfar::metrics
