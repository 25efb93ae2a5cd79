#pragma once

#include <span>

#include "bfar/types.hpp"

namespace bfar {

enum class EstimatorKind {
  CellAveraging,
  GreatestOf,
  SmallestOf,
  OrderedStatistic,
};

/// Threshold specification T = scale_a * Z + offset_b.
///
/// Z is the SUM of the window_w reference samples, not their mean (many CFAR
/// texts use the mean). Useful scale values are therefore small, on the order
/// of pfa_ub^(-1/w) - 1; use analysis::solve_a_for_bound to pick one from a
/// target false-alarm bound. window_w counts reference cells on both sides
/// combined; half-window constructors are provided for familiarity.
struct DetectorParams {
  double scale_a = 1.0;
  double offset_b = 0.0;
  int window_w = 40;      // total reference cells, even
  int guard_per_side = 2; // cells adjacent to the CUT excluded from Z
  EstimatorKind estimator = EstimatorKind::CellAveraging;
  int os_k = 0;           // 1-based order statistic, OrderedStatistic only

  DetectorParams() = default;
  DetectorParams(double a, double b, int w, int guard = 2,
                 EstimatorKind kind = EstimatorKind::CellAveraging,
                 int k = 0);

  static DetectorParams from_half_window(double a, double b, int half_window,
                                         int guard = 2,
                                         EstimatorKind kind =
                                             EstimatorKind::CellAveraging,
                                         int k = 0) {
    return DetectorParams(a, b, 2 * half_window, guard, kind, k);
  }

  /// Minimum profile length the sliding window needs.
  int min_profile_length() const {
    return window_w + 2 * guard_per_side + 1;
  }
};

/// Noise level statistic Z from the reference window.
struct NoiseEstimate {
  double z = 0.0;
};

/// Computes Z for one cell under test. The reference window is window_w/2
/// cells on each side of the CUT, skipping guard_per_side cells next to it;
/// cells past either end are filled by mirror reflection about the boundary
/// sample (index -k reads index k).
///
/// cell_averaging: sum of the references. greatest_of / smallest_of: twice
/// the larger / smaller half-window sum. ordered_statistic(k): window_w times
/// the k-th smallest reference, scaled to be commensurate with the CA sum so
/// one (a, b) grid serves every estimator.
NoiseEstimate estimate_noise(std::span<const double> profile, int cut_index,
                             const DetectorParams& params);

/// Flags cell j iff profile[j] > a * Z_j + b (strict).
std::vector<std::uint8_t> detect_profile(std::span<const double> profile,
                                         const DetectorParams& params);

/// Applies detect_profile to every azimuth row and back-projects the mask.
/// Rows are processed in parallel; the result is identical to the serial
/// reference below bit for bit.
DetectionSet detect_scan(const PolarScan& scan, const DetectorParams& params);
DetectionSet detect_scan_serial(const PolarScan& scan,
                                const DetectorParams& params);

/// Baseline filter: per azimuth, the k highest-intensity cells (ties broken
/// toward the lower range bin).
DetectionSet k_strongest(const PolarScan& scan, int k);

}  // namespace bfar
