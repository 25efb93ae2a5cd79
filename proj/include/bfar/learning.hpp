#pragma once

#include <optional>
#include <span>
#include <string>

#include "bfar/metrics.hpp"
#include "bfar/odometry.hpp"

namespace bfar::learn {

enum class Objective { Translation, Ate };

enum class CellStatus {
  Ok,
  Failed,   // odometry chain broke or metrics were unevaluable
  Invalid,  // parameter pair violates the detector invariants
};

std::string to_string(CellStatus status);

struct GridCell {
  double a = 0.0;
  double b = 0.0;
  double pfa_ub = 0.0;  // pfa_upper_bound(a, w) for the base window
  double transl_pct = 0.0;
  double rot_deg = 0.0;
  double ate_m = 0.0;
  double detection_count_mean = 0.0;
  CellStatus status = CellStatus::Ok;
};

struct GridSearchReport {
  std::vector<GridCell> grid;     // exhaustive, ordered by (a, b)
  std::optional<GridCell> best;   // empty only when every cell failed
};

/// The detector's default parameter grid: a = [0, 0.1, 0.25, 0.5, 1, 2, 3],
/// b = [5, 10, 15, 20, 30, 40, 50, 60].
std::vector<double> default_a_grid();
std::vector<double> default_b_grid();

/// Runs chain_odometry + metrics for every (a, b) pair against the training
/// sequence and picks the argmin of the objective among non-failed cells.
/// Ties break toward smaller ate, then smaller b, then smaller a. Throws if
/// every cell failed. The pipeline is deterministic, so the report is
/// byte-for-byte reproducible.
GridSearchReport grid_search(std::span<const PolarScan> scans,
                             const Trajectory& ground_truth,
                             std::span<const double> a_grid,
                             std::span<const double> b_grid,
                             const DetectorParams& base,
                             Objective objective = Objective::Translation,
                             const odom::IcpConfig& icp = {},
                             std::span<const double> lengths = {});

struct SweepCell {
  double pfa = 0.0;  // requested bound; equals the PFA itself at b = 0
  double a = 0.0;
  double transl_pct = 0.0;
  double rot_deg = 0.0;
  double ate_m = 0.0;
  double mean_detections_per_scan = 0.0;
  CellStatus status = CellStatus::Ok;
};

/// The CA-CFAR sensitivity experiment: each requested PFA is converted to a
/// scale via solve_a_for_bound, the pipeline runs at b = 0, and metrics plus
/// mean detection counts are reported. PFA = 1 maps to a = 0, which the
/// detector rejects with b = 0; such cells are recorded as Invalid.
std::vector<SweepCell> sensitivity_sweep(std::span<const PolarScan> scans,
                                         const Trajectory& ground_truth,
                                         const DetectorParams& base,
                                         std::span<const double> pfa_grid,
                                         const odom::IcpConfig& icp = {},
                                         std::span<const double> lengths = {});

}  // namespace bfar::learn
