#include "bfar/simulator.hpp"

#include <cmath>
#include <unordered_map>

#include "bfar/rng.hpp"

namespace bfar::sim {

void WorldSpec::validate() const {
  if (!(max_range > 0.0)) throw DomainError("max_range must be > 0");
  for (const Landmark& lm : landmarks) {
    if (!bounds.contains(lm.x, lm.y)) {
      throw DomainError("landmark outside world bounds");
    }
    if (!(lm.snr >= 0.0)) throw DomainError("landmark SNR must be >= 0");
    if (lm.spread_bins < 1) throw DomainError("spread_bins must be >= 1");
  }
}

void SimConfig::validate() const {
  if (num_azimuths <= 0 || num_range_bins <= 0) {
    throw DomainError("scan dimensions must be positive");
  }
  if (!(range_resolution > 0.0)) {
    throw DomainError("range_resolution must be > 0");
  }
}

namespace {

// Accumulated SNR contribution per cell, keyed by flat cell index.
using SnrMap = std::unordered_map<std::size_t, double>;

SnrMap landmark_snr_map(const WorldSpec& world, const Pose2D& pose,
                        const SimConfig& cfg) {
  const SE2 sensor_from_world = pose.se2().inverse();
  const double az_step = 2.0 * kPi / cfg.num_azimuths;
  const double usable_range =
      std::min(world.max_range, cfg.num_range_bins * cfg.range_resolution);

  SnrMap snr;
  for (const Landmark& lm : world.landmarks) {
    const Vec2 p = sensor_from_world.apply({lm.x, lm.y});
    const double r = p.norm();
    if (!(r > 0.0) || r >= usable_range) continue;
    double bearing = std::atan2(p.y, p.x);
    if (bearing < 0.0) bearing += 2.0 * kPi;
    const int az =
        static_cast<int>(std::llround(bearing / az_step)) % cfg.num_azimuths;
    const int bin0 = static_cast<int>(std::floor(r / cfg.range_resolution));
    double weight = 1.0;
    for (int sidx = 0; sidx < lm.spread_bins; ++sidx, weight *= 0.5) {
      const int bin = bin0 + sidx;
      if (bin >= cfg.num_range_bins) break;
      snr[static_cast<std::size_t>(az) * cfg.num_range_bins + bin] +=
          lm.snr * weight;
    }
  }
  return snr;
}

PolarScan render_impl(const WorldSpec& world, const Pose2D& pose,
                      const SimConfig& cfg, std::uint64_t seed,
                      bool parallel) {
  world.validate();
  cfg.validate();
  world.noise.validate_smoothness(cfg.range_resolution);
  if (!world.bounds.contains(pose.x, pose.y)) {
    throw DomainError("pose outside world bounds");
  }

  const SnrMap snr = landmark_snr_map(world, pose, cfg);

  std::vector<double> noise_mean(static_cast<std::size_t>(cfg.num_range_bins));
  for (int bin = 0; bin < cfg.num_range_bins; ++bin) {
    const double r = (bin + 0.5) * cfg.range_resolution;
    noise_mean[static_cast<std::size_t>(bin)] = 2.0 * world.noise.mu_at(r);
  }

  std::vector<double> cells(static_cast<std::size_t>(cfg.num_azimuths) *
                            cfg.num_range_bins);
#pragma omp parallel for schedule(static) if (parallel)
  for (int az = 0; az < cfg.num_azimuths; ++az) {
    for (int bin = 0; bin < cfg.num_range_bins; ++bin) {
      const std::size_t idx =
          static_cast<std::size_t>(az) * cfg.num_range_bins + bin;
      double mean = noise_mean[static_cast<std::size_t>(bin)];
      if (const auto it = snr.find(idx); it != snr.end()) {
        mean *= 1.0 + it->second;
      }
      SplitMix64 rng(derive_seed(seed, idx));
      cells[idx] = rng.exponential(mean);
    }
  }
  return PolarScan(cfg.num_azimuths, cfg.num_range_bins, cfg.range_resolution,
                   std::move(cells));
}

}  // namespace

PolarScan render_scan(const WorldSpec& world, const Pose2D& pose,
                      const SimConfig& cfg, std::uint64_t seed) {
  return render_impl(world, pose, cfg, seed, true);
}

PolarScan render_scan_serial(const WorldSpec& world, const Pose2D& pose,
                             const SimConfig& cfg, std::uint64_t seed) {
  return render_impl(world, pose, cfg, seed, false);
}

std::vector<PolarScan> render_sequence(const WorldSpec& world,
                                       const Trajectory& trajectory,
                                       const SimConfig& cfg,
                                       std::uint64_t seed) {
  trajectory.validate();
  std::vector<PolarScan> scans;
  scans.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    scans.push_back(render_scan(world, trajectory[i], cfg,
                                derive_seed(seed, i)));
  }
  return scans;
}

std::size_t landmark_cell_count(const WorldSpec& world, const Pose2D& pose,
                                const SimConfig& cfg) {
  return landmark_snr_map(world, pose, cfg).size();
}

WorldSpec generate_world(const WorldGenParams& params, std::uint64_t seed) {
  if (!(params.density > 0.0)) throw DomainError("density must be > 0");
  if (!(params.bounds.area() > 0.0)) throw DomainError("degenerate bounds");
  if (!(params.snr_min > 0.0) || params.snr_max < params.snr_min) {
    throw DomainError("SNR range must satisfy 0 < min <= max");
  }
  if (params.spread_bins < 1) throw DomainError("spread_bins must be >= 1");

  const auto count = static_cast<std::size_t>(
      std::llround(params.density * params.bounds.area()));
  WorldSpec world;
  world.bounds = params.bounds;
  world.noise = params.noise;
  world.max_range = params.max_range;
  world.seed = seed;
  world.landmarks.reserve(count);
  SplitMix64 rng(derive_seed(seed, 0));
  for (std::size_t i = 0; i < count; ++i) {
    Landmark lm;
    lm.x = rng.uniform(params.bounds.xmin, params.bounds.xmax);
    lm.y = rng.uniform(params.bounds.ymin, params.bounds.ymax);
    lm.snr = rng.log_uniform(params.snr_min, params.snr_max);
    lm.spread_bins = params.spread_bins;
    world.landmarks.push_back(lm);
  }
  world.validate();
  return world;
}

}  // namespace bfar::sim
