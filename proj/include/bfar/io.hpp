#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "bfar/types.hpp"

namespace bfar::io {

enum class ScanFormat { Pgm8, CsvFloat };

/// Scan metadata lives in a sidecar `<path>.meta` text file with lines
/// num_azimuths=<int>, num_range_bins=<int>, range_resolution=<float>.
///
/// csv_float: UTF-8, one azimuth per line, comma-separated decimals, printed
/// with enough digits to round-trip bit-exactly.
/// pgm8: binary "P5", width = range bins, height = azimuths, maxval 255;
/// writing clamps to [0, 255] and truncates toward zero (documented lossy
/// quantization, per-cell error < 1).
PolarScan read_scan(const std::filesystem::path& path, ScanFormat format);
void write_scan(const PolarScan& scan, const std::filesystem::path& path,
                ScanFormat format);

/// Point cloud CSV: header "x,y,intensity".
void write_point_cloud(std::span<const Point> points,
                       const std::filesystem::path& path);
std::vector<Point> read_point_cloud(const std::filesystem::path& path);

/// Trajectory CSV: header "t,x,y,yaw".
void write_trajectory(const Trajectory& traj,
                      const std::filesystem::path& path);
Trajectory read_trajectory(const std::filesystem::path& path);

}  // namespace bfar::io
