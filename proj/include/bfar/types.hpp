#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfar {

/// Raised when an argument or constructed object violates a domain invariant.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on file system or format failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;

/// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double rad) {
  double y = std::fmod(rad + kPi, 2.0 * kPi);
  if (y <= 0.0) y += 2.0 * kPi;
  return y - kPi;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Rigid transform on the plane. Composition follows the usual convention:
/// `a.compose(b)` applies b first, then a.
struct SE2 {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Vec2 apply(Vec2 p) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {x + c * p.x - s * p.y, y + s * p.x + c * p.y};
  }

  SE2 compose(const SE2& o) const {
    const Vec2 t = apply({o.x, o.y});
    return {t.x, t.y, normalize_angle(yaw + o.yaw)};
  }

  SE2 inverse() const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {-(c * x + s * y), -(-s * x + c * y), normalize_angle(-yaw)};
  }

  Vec2 translation() const { return {x, y}; }
};

/// Timestamped 2-D pose. Yaw is kept normalized to (-pi, pi].
struct Pose2D {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Pose2D() = default;
  Pose2D(double t_, double x_, double y_, double yaw_)
      : t(t_), x(x_), y(y_), yaw(normalize_angle(yaw_)) {}

  SE2 se2() const { return {x, y, yaw}; }
};

/// Ordered pose list with strictly increasing timestamps.
struct Trajectory {
  std::vector<Pose2D> poses;

  std::size_t size() const { return poses.size(); }
  bool empty() const { return poses.empty(); }
  const Pose2D& operator[](std::size_t i) const { return poses[i]; }
  Pose2D& operator[](std::size_t i) { return poses[i]; }

  /// Throws DomainError if timestamps are not strictly increasing.
  void validate() const;
};

/// One sweep of a spinning radar: azimuth-major matrix of square-law
/// intensity samples plus the geometry needed to place each cell.
class PolarScan {
 public:
  PolarScan(int num_azimuths, int num_range_bins, double range_resolution);
  PolarScan(int num_azimuths, int num_range_bins, double range_resolution,
            std::vector<double> cells);
  PolarScan(int num_azimuths, int num_range_bins, double range_resolution,
            std::vector<double> cells, std::vector<double> azimuth_offsets);

  int num_azimuths() const { return num_azimuths_; }
  int num_range_bins() const { return num_range_bins_; }
  double range_resolution() const { return range_resolution_; }

  double at(int az, int bin) const {
    return cells_[static_cast<std::size_t>(az) * num_range_bins_ + bin];
  }
  double& at(int az, int bin) {
    return cells_[static_cast<std::size_t>(az) * num_range_bins_ + bin];
  }

  std::span<const double> row(int az) const {
    return {cells_.data() + static_cast<std::size_t>(az) * num_range_bins_,
            static_cast<std::size_t>(num_range_bins_)};
  }
  std::span<double> row(int az) {
    return {cells_.data() + static_cast<std::size_t>(az) * num_range_bins_,
            static_cast<std::size_t>(num_range_bins_)};
  }

  const std::vector<double>& cells() const { return cells_; }
  const std::vector<double>& azimuth_offsets() const { return azimuth_offsets_; }

  /// Bearing of azimuth index i, radians.
  double bearing(int az) const { return azimuth_offsets_[az]; }

  /// Range of the center of bin j, meters: (j + 0.5) * resolution.
  double bin_center_range(int bin) const {
    return (bin + 0.5) * range_resolution_;
  }

  std::size_t cell_count() const { return cells_.size(); }

 private:
  void validate() const;

  int num_azimuths_;
  int num_range_bins_;
  double range_resolution_;
  std::vector<double> azimuth_offsets_;
  std::vector<double> cells_;  // azimuth-major
};

/// Uniformly spaced bearings 2*pi*i/n starting at zero.
std::vector<double> uniform_azimuth_offsets(int num_azimuths);

struct Point {
  double x = 0.0;
  double y = 0.0;
  double intensity = 0.0;
};

/// Detector output: per-cell mask plus the Cartesian cloud of flagged cells.
struct DetectionSet {
  int num_azimuths = 0;
  int num_range_bins = 0;
  std::vector<std::uint8_t> mask;  // azimuth-major, congruent to source scan
  std::vector<Point> points;       // one per true mask cell, row-major order

  bool mask_at(int az, int bin) const {
    return mask[static_cast<std::size_t>(az) * num_range_bins + bin] != 0;
  }
  std::size_t count() const { return points.size(); }
};

/// Projects every true mask cell to the sensor frame. Cell (i, j) maps to
/// range (j + 0.5) * resolution at bearing azimuth_offsets[i].
std::vector<Point> polar_to_cartesian(const PolarScan& scan,
                                      std::span<const std::uint8_t> mask);

/// Inverse of the cell-center projection: which cell does a sensor-frame
/// point fall in? Returns nothing when the point is outside the scan.
std::optional<std::pair<int, int>> cell_of_point(const PolarScan& scan,
                                                 double x, double y);

/// Builds a DetectionSet from a scan and a congruent mask.
DetectionSet make_detection_set(const PolarScan& scan,
                                std::vector<std::uint8_t> mask);

/// Background noise description shared by the simulator and the analysis
/// module: a radially parametric clutter-plus-thermal power field
///   mu(r) = mu0 * (1 + alpha * exp(-r / r0))
/// (alpha = 0 gives a flat floor) and a target SNR used when injecting
/// targets. The field is smooth by construction; validate_smoothness checks
/// that the per-bin relative step stays below the configured bound.
struct NoiseModel {
  double mu0 = 1.0;
  double alpha = 0.0;
  double r0 = 1.0;
  double snr_s = 0.0;
  double max_rel_step = 0.05;

  NoiseModel() = default;
  NoiseModel(double mu0_, double alpha_, double r0_, double snr_s_ = 0.0,
             double max_rel_step_ = 0.05);

  double mu_at(double range) const {
    return mu0 * (1.0 + alpha * std::exp(-range / r0));
  }

  /// Checks the per-bin relative step of mu against max_rel_step.
  void validate_smoothness(double range_resolution) const;
};

}  // namespace bfar
