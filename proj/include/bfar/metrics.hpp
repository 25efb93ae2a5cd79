#pragma once

#include <span>

#include "bfar/types.hpp"

namespace bfar::metrics {

/// Absolute trajectory error. Both trajectories are re-expressed relative to
/// their own first pose (first-pose alignment, no least-squares fit), then
/// the RMSE of per-pose Euclidean translation differences is taken over the
/// poses after the first (whose error is zero by construction).
double ate_rmse(const Trajectory& estimate, const Trajectory& ground_truth);

struct RelativeErrors {
  double translation_pct = 0.0;       // % of sub-sequence length
  double rotation_deg_per_100m = 0.0;
};

/// KITTI-style sub-sequence errors: for every start pose and every length L,
/// the sub-sequence ends where accumulated ground-truth path length first
/// reaches L; the relative-pose error between estimate and ground truth over
/// it contributes translation as % of L and rotation as deg per 100 m.
/// Per-length means are averaged over all lengths.
///
/// Desk-scale default lengths are [10, 20, ..., 80] m (the usual 100..800 m
/// divided by ten); any list can be passed.
RelativeErrors kitti_relative_errors(const Trajectory& estimate,
                                     const Trajectory& ground_truth,
                                     std::span<const double> lengths);

/// [10, 20, ..., 80] meters.
std::vector<double> desk_scale_lengths();

/// [100, 200, ..., 800] meters.
std::vector<double> paper_scale_lengths();

/// Total ground-truth path length (sum of consecutive pose distances).
double path_length(const Trajectory& trajectory);

}  // namespace bfar::metrics
