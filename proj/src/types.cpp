#include "bfar/types.hpp"

#include <algorithm>
#include <cmath>

namespace bfar {

void Trajectory::validate() const {
  for (std::size_t i = 1; i < poses.size(); ++i) {
    if (!(poses[i].t > poses[i - 1].t)) {
      throw DomainError("trajectory timestamps must be strictly increasing");
    }
  }
}

std::vector<double> uniform_azimuth_offsets(int num_azimuths) {
  std::vector<double> offsets(static_cast<std::size_t>(num_azimuths));
  for (int i = 0; i < num_azimuths; ++i) {
    offsets[static_cast<std::size_t>(i)] = 2.0 * kPi * i / num_azimuths;
  }
  return offsets;
}

PolarScan::PolarScan(int num_azimuths, int num_range_bins,
                     double range_resolution)
    : PolarScan(num_azimuths, num_range_bins, range_resolution,
                std::vector<double>(
                    num_azimuths > 0 && num_range_bins > 0
                        ? static_cast<std::size_t>(num_azimuths) * num_range_bins
                        : 0,
                    0.0)) {}

PolarScan::PolarScan(int num_azimuths, int num_range_bins,
                     double range_resolution, std::vector<double> cells)
    : PolarScan(num_azimuths, num_range_bins, range_resolution,
                std::move(cells), uniform_azimuth_offsets(std::max(num_azimuths, 0))) {}

PolarScan::PolarScan(int num_azimuths, int num_range_bins,
                     double range_resolution, std::vector<double> cells,
                     std::vector<double> azimuth_offsets)
    : num_azimuths_(num_azimuths),
      num_range_bins_(num_range_bins),
      range_resolution_(range_resolution),
      azimuth_offsets_(std::move(azimuth_offsets)),
      cells_(std::move(cells)) {
  validate();
}

void PolarScan::validate() const {
  if (num_azimuths_ <= 0 || num_range_bins_ <= 0) {
    throw DomainError("scan dimensions must be positive");
  }
  if (!(range_resolution_ > 0.0)) {
    throw DomainError("range_resolution must be > 0");
  }
  if (cells_.size() !=
      static_cast<std::size_t>(num_azimuths_) * num_range_bins_) {
    throw DomainError("cell count does not match scan dimensions");
  }
  if (azimuth_offsets_.size() != static_cast<std::size_t>(num_azimuths_)) {
    throw DomainError("azimuth offset table does not match azimuth count");
  }
  for (double v : cells_) {
    if (!(v >= 0.0)) {
      throw DomainError("intensity samples must be non-negative");
    }
  }
}

std::vector<Point> polar_to_cartesian(const PolarScan& scan,
                                      std::span<const std::uint8_t> mask) {
  if (mask.size() != scan.cell_count()) {
    throw DomainError("mask is not congruent with scan");
  }
  std::vector<Point> points;
  for (int az = 0; az < scan.num_azimuths(); ++az) {
    const double theta = scan.bearing(az);
    const double c = std::cos(theta), s = std::sin(theta);
    for (int bin = 0; bin < scan.num_range_bins(); ++bin) {
      const std::size_t idx =
          static_cast<std::size_t>(az) * scan.num_range_bins() + bin;
      if (!mask[idx]) continue;
      const double r = scan.bin_center_range(bin);
      points.push_back({r * c, r * s, scan.at(az, bin)});
    }
  }
  return points;
}

std::optional<std::pair<int, int>> cell_of_point(const PolarScan& scan,
                                                 double x, double y) {
  const double r = std::hypot(x, y);
  const int bin = static_cast<int>(std::floor(r / scan.range_resolution()));
  if (bin < 0 || bin >= scan.num_range_bins()) return std::nullopt;
  double theta = std::atan2(y, x);
  if (theta < 0.0) theta += 2.0 * kPi;
  // Nearest bearing in the offsets table.
  int best = 0;
  double best_dist = std::abs(normalize_angle(theta - scan.bearing(0)));
  for (int az = 1; az < scan.num_azimuths(); ++az) {
    const double d = std::abs(normalize_angle(theta - scan.bearing(az)));
    if (d < best_dist) {
      best = az;
      best_dist = d;
    }
  }
  return std::make_pair(best, bin);
}

DetectionSet make_detection_set(const PolarScan& scan,
                                std::vector<std::uint8_t> mask) {
  if (mask.size() != scan.cell_count()) {
    throw DomainError("mask is not congruent with scan");
  }
  DetectionSet out;
  out.num_azimuths = scan.num_azimuths();
  out.num_range_bins = scan.num_range_bins();
  out.points = polar_to_cartesian(scan, mask);
  out.mask = std::move(mask);
  return out;
}

NoiseModel::NoiseModel(double mu0_, double alpha_, double r0_, double snr_s_,
                       double max_rel_step_)
    : mu0(mu0_), alpha(alpha_), r0(r0_), snr_s(snr_s_),
      max_rel_step(max_rel_step_) {
  if (!(mu0 > 0.0)) throw DomainError("mu0 must be > 0");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (!(r0 > 0.0)) throw DomainError("r0 must be > 0");
  if (!(snr_s >= 0.0)) throw DomainError("snr_s must be >= 0");
  if (!(max_rel_step > 0.0)) throw DomainError("max_rel_step must be > 0");
}

void NoiseModel::validate_smoothness(double range_resolution) const {
  // Worst-case per-bin relative step of mu(r), attained as r -> 0.
  const double step =
      alpha * (1.0 - std::exp(-range_resolution / r0)) / (1.0 + alpha);
  if (step > max_rel_step) {
    throw DomainError("noise floor varies faster than the smoothness bound");
  }
}

}  // namespace bfar
