#pragma once

#include <cstdint>
#include <vector>

#include "bfar/types.hpp"

namespace bfar::sim {

struct Landmark {
  double x = 0.0;
  double y = 0.0;
  double snr = 0.0;     // average target SNR S
  int spread_bins = 1;  // range cells the return smears across
};

struct Bounds {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  double area() const { return (xmax - xmin) * (ymax - ymin); }
};

/// A landmark world with a radially smooth noise floor. Landmarks add their
/// SNR multiplicatively to the exponential mean (fluctuating-target model),
/// so the analysis module's closed forms predict per-landmark detection
/// exactly. Spread cells take geometrically decaying weights 1, 1/2, 1/4, ...
/// toward increasing range.
struct WorldSpec {
  std::vector<Landmark> landmarks;
  Bounds bounds;
  NoiseModel noise;        // mu(r) field; snr_s unused here
  double max_range = 128.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimConfig {
  int num_azimuths = 400;
  int num_range_bins = 512;
  double range_resolution = 0.25;

  void validate() const;
};

/// Renders one scan from a pose: every cell draws Exponential(mean 2μ(r)),
/// cells holding a visible landmark draw Exponential(mean 2μ(r)(1+S·weight)).
/// Each cell derives its generator from (seed, cell index), so rendering is
/// deterministic and independent of evaluation order.
PolarScan render_scan(const WorldSpec& world, const Pose2D& pose,
                      const SimConfig& cfg, std::uint64_t seed);
PolarScan render_scan_serial(const WorldSpec& world, const Pose2D& pose,
                             const SimConfig& cfg, std::uint64_t seed);

/// One scan per pose, with per-scan seeds derived from (seed, pose index).
std::vector<PolarScan> render_sequence(const WorldSpec& world,
                                       const Trajectory& trajectory,
                                       const SimConfig& cfg,
                                       std::uint64_t seed);

/// Number of distinct cells that visible landmarks (with their spread)
/// occupy in a scan rendered from this pose — the ground truth a detector is
/// judged against.
std::size_t landmark_cell_count(const WorldSpec& world, const Pose2D& pose,
                                const SimConfig& cfg);

struct WorldGenParams {
  Bounds bounds;
  double density = 0.0;     // landmarks per square meter
  double snr_min = 10.0;    // log-uniform SNR range
  double snr_max = 1000.0;
  int spread_bins = 3;
  NoiseModel noise;
  double max_range = 128.0;
};

/// Samples landmark positions uniformly in bounds, SNRs log-uniformly.
WorldSpec generate_world(const WorldGenParams& params, std::uint64_t seed);

}  // namespace bfar::sim
