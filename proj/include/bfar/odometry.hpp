#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bfar/detector.hpp"
#include "bfar/types.hpp"

namespace bfar::odom {

struct IcpConfig {
  double max_corr_dist = 2.0;       // nearest-neighbor gate, meters
  int max_iterations = 50;
  double transform_epsilon = 1e-6;  // convergence on per-iteration delta
  double collinearity_tol = 1e-6;   // min principal stddev, meters
};

enum class RegStatus {
  Ok,                 // converged below transform_epsilon
  MaxIterations,      // usable transform, convergence not certified
  Degenerate,         // a cloud is collinear within tolerance
  NoCorrespondences,  // fewer than 3 gated pairs
};

struct RegistrationResult {
  SE2 transform;  // maps target-frame points into the source frame
  double rmse = 0.0;
  int iterations = 0;
  bool converged = false;
  RegStatus status = RegStatus::Ok;
};

/// Point-to-point rigid registration. Iterates nearest-neighbor association
/// (gated) against the fixed source cloud and a closed-form least-squares
/// fit: centroid-aligned cross-covariance, rotation from its 2-D polar
/// decomposition. For target = T applied to source, the result is T^-1, so
/// registering scan k against scan k+1 yields the relative sensor motion.
RegistrationResult icp_register(std::span<const Point> source,
                                std::span<const Point> target,
                                const IcpConfig& config = {},
                                const SE2& initial_guess = {});

/// Detector choice for the odometry front end.
struct KStrongestSpec {
  int k = 12;
};
using DetectorChoice = std::variant<DetectorParams, KStrongestSpec>;

struct OdometryRun {
  Trajectory trajectory;  // starts at the identity pose, t = index * dt
  std::optional<std::size_t> failed_at;  // scan index of first failed pair
  std::vector<std::size_t> detections_per_scan;
};

/// Detects every scan, registers consecutive pairs (seeded with the previous
/// relative transform as a constant-velocity prior) and chains the relative
/// poses. A registration failure (too few points, degenerate geometry, no
/// gated pairs) stops the chain and is reported via failed_at.
OdometryRun chain_odometry(std::span<const PolarScan> scans,
                           const DetectorChoice& detector,
                           const IcpConfig& icp = {}, double dt = 1.0);

}  // namespace bfar::odom
