#include "bfar/detector.hpp"

#include <algorithm>
#include <numeric>

namespace bfar {

DetectorParams::DetectorParams(double a, double b, int w, int guard,
                               EstimatorKind kind, int k)
    : scale_a(a), offset_b(b), window_w(w), guard_per_side(guard),
      estimator(kind), os_k(k) {
  if (!(scale_a >= 0.0)) throw DomainError("scale_a must be >= 0");
  if (!(offset_b >= 0.0)) throw DomainError("offset_b must be >= 0");
  if (window_w < 2 || window_w % 2 != 0) {
    throw DomainError("window_w must be even and >= 2");
  }
  if (guard_per_side < 0) throw DomainError("guard_per_side must be >= 0");
  if (scale_a == 0.0 && offset_b == 0.0) {
    throw DomainError("scale_a and offset_b cannot both be zero");
  }
  if (estimator == EstimatorKind::OrderedStatistic) {
    if (os_k < 1 || os_k > window_w) {
      throw DomainError("ordered_statistic k must be in [1, window_w]");
    }
  }
}

namespace {

// Mirror reflection about the boundary samples: -1 -> 1, n -> n-2.
inline int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

// Gathers the two half-window sums around the CUT; fills `values` with the
// reference samples when non-null (ordered statistic needs them).
struct HalfSums {
  double left = 0.0;
  double right = 0.0;
};

inline HalfSums gather_references(std::span<const double> profile, int cut,
                                  const DetectorParams& p,
                                  std::vector<double>* values) {
  const int n = static_cast<int>(profile.size());
  const int half = p.window_w / 2;
  HalfSums sums;
  for (int k = 1; k <= half; ++k) {
    const int left = reflect_index(cut - p.guard_per_side - k, n);
    const int right = reflect_index(cut + p.guard_per_side + k, n);
    sums.left += profile[left];
    sums.right += profile[right];
    if (values) {
      values->push_back(profile[left]);
      values->push_back(profile[right]);
    }
  }
  return sums;
}

}  // namespace

NoiseEstimate estimate_noise(std::span<const double> profile, int cut_index,
                             const DetectorParams& params) {
  const int n = static_cast<int>(profile.size());
  if (n < params.min_profile_length()) {
    throw DomainError("profile shorter than the minimum window");
  }
  if (cut_index < 0 || cut_index >= n) {
    throw DomainError("cut_index out of range");
  }

  switch (params.estimator) {
    case EstimatorKind::CellAveraging: {
      const HalfSums s = gather_references(profile, cut_index, params, nullptr);
      return {s.left + s.right};
    }
    case EstimatorKind::GreatestOf: {
      const HalfSums s = gather_references(profile, cut_index, params, nullptr);
      return {2.0 * std::max(s.left, s.right)};
    }
    case EstimatorKind::SmallestOf: {
      const HalfSums s = gather_references(profile, cut_index, params, nullptr);
      return {2.0 * std::min(s.left, s.right)};
    }
    case EstimatorKind::OrderedStatistic: {
      std::vector<double> values;
      values.reserve(static_cast<std::size_t>(params.window_w));
      gather_references(profile, cut_index, params, &values);
      std::nth_element(values.begin(), values.begin() + (params.os_k - 1),
                       values.end());
      return {static_cast<double>(params.window_w) *
              values[static_cast<std::size_t>(params.os_k - 1)]};
    }
  }
  throw DomainError("unknown estimator kind");
}

std::vector<std::uint8_t> detect_profile(std::span<const double> profile,
                                         const DetectorParams& params) {
  const int n = static_cast<int>(profile.size());
  if (n < params.min_profile_length()) {
    throw DomainError("profile shorter than the minimum window");
  }
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  std::vector<double> scratch;
  const bool os = params.estimator == EstimatorKind::OrderedStatistic;
  if (os) scratch.reserve(static_cast<std::size_t>(params.window_w));

  for (int j = 0; j < n; ++j) {
    double z;
    if (os) {
      scratch.clear();
      gather_references(profile, j, params, &scratch);
      std::nth_element(scratch.begin(), scratch.begin() + (params.os_k - 1),
                       scratch.end());
      z = static_cast<double>(params.window_w) *
          scratch[static_cast<std::size_t>(params.os_k - 1)];
    } else {
      const HalfSums s = gather_references(profile, j, params, nullptr);
      switch (params.estimator) {
        case EstimatorKind::GreatestOf:
          z = 2.0 * std::max(s.left, s.right);
          break;
        case EstimatorKind::SmallestOf:
          z = 2.0 * std::min(s.left, s.right);
          break;
        default:
          z = s.left + s.right;
          break;
      }
    }
    mask[static_cast<std::size_t>(j)] =
        profile[j] > params.scale_a * z + params.offset_b ? 1 : 0;
  }
  return mask;
}

namespace {

std::vector<std::uint8_t> detect_mask(const PolarScan& scan,
                                      const DetectorParams& params,
                                      bool parallel) {
  std::vector<std::uint8_t> mask(scan.cell_count(), 0);
  const int rows = scan.num_azimuths();
  const int bins = scan.num_range_bins();
  // Rows are independent, so scheduling cannot change the result.
#pragma omp parallel for schedule(static) if (parallel)
  for (int az = 0; az < rows; ++az) {
    const std::vector<std::uint8_t> row_mask =
        detect_profile(scan.row(az), params);
    std::copy(row_mask.begin(), row_mask.end(),
              mask.begin() + static_cast<std::size_t>(az) * bins);
  }
  return mask;
}

}  // namespace

DetectionSet detect_scan(const PolarScan& scan, const DetectorParams& params) {
  if (scan.num_range_bins() < params.min_profile_length()) {
    throw DomainError("scan rows shorter than the minimum window");
  }
  return make_detection_set(scan, detect_mask(scan, params, true));
}

DetectionSet detect_scan_serial(const PolarScan& scan,
                                const DetectorParams& params) {
  if (scan.num_range_bins() < params.min_profile_length()) {
    throw DomainError("scan rows shorter than the minimum window");
  }
  return make_detection_set(scan, detect_mask(scan, params, false));
}

DetectionSet k_strongest(const PolarScan& scan, int k) {
  const int bins = scan.num_range_bins();
  if (k < 1 || k > bins) throw DomainError("k out of range");
  std::vector<std::uint8_t> mask(scan.cell_count(), 0);
  std::vector<int> order(static_cast<std::size_t>(bins));
  for (int az = 0; az < scan.num_azimuths(); ++az) {
    const auto row = scan.row(az);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&row](int lhs, int rhs) {
                        if (row[lhs] != row[rhs]) return row[lhs] > row[rhs];
                        return lhs < rhs;  // ties toward the lower bin
                      });
    for (int i = 0; i < k; ++i) {
      mask[static_cast<std::size_t>(az) * bins + order[i]] = 1;
    }
  }
  return make_detection_set(scan, std::move(mask));
}

}  // namespace bfar
