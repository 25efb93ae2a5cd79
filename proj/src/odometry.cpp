#include "bfar/odometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace bfar::odom {

namespace {

// Uniform bucket grid for gated nearest-neighbor lookup. Bucket size equals
// the gate, so scanning the 3x3 neighborhood of the query bucket covers
// every candidate within the gate.
class PointGrid {
 public:
  PointGrid(std::span<const Point> pts, double cell_size)
      : points_(pts), cell_(cell_size) {
    buckets_.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      buckets_[key(pts[i].x, pts[i].y)].push_back(i);
    }
  }

  // Index of the nearest point within max_dist, or npos.
  std::size_t nearest(Vec2 q, double max_dist) const {
    const long long cx = coord(q.x);
    const long long cy = coord(q.y);
    std::size_t best = npos;
    double best_d2 = max_dist * max_dist;
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets_.find(pack(cx + dx, cy + dy));
        if (it == buckets_.end()) continue;
        for (const std::size_t i : it->second) {
          const double ddx = points_[i].x - q.x;
          const double ddy = points_[i].y - q.y;
          const double d2 = ddx * ddx + ddy * ddy;
          if (d2 <= best_d2) {
            // Deterministic tie-break toward the lower index.
            if (d2 < best_d2 || i < best) {
              best = i;
              best_d2 = d2;
            }
          }
        }
      }
    }
    return best;
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  long long coord(double v) const {
    return static_cast<long long>(std::floor(v / cell_));
  }
  static std::uint64_t pack(long long x, long long y) {
    return (static_cast<std::uint64_t>(x) << 32) ^
           (static_cast<std::uint64_t>(y) & 0xffffffffULL);
  }
  std::uint64_t key(double x, double y) const {
    return pack(coord(x), coord(y));
  }

  std::span<const Point> points_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

bool collinear(std::span<const Point> pts, double tol) {
  double mx = 0.0, my = 0.0;
  for (const Point& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point& p : pts) {
    const double dx = p.x - mx, dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double n = static_cast<double>(pts.size());
  sxx /= n;
  sxy /= n;
  syy /= n;
  // Smaller eigenvalue of the 2x2 covariance.
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
  const double lambda_min = tr / 2.0 - disc;
  return lambda_min < tol * tol;
}

// Closed-form least-squares rigid fit mapping moving -> fixed.
SE2 fit_rigid(const std::vector<Vec2>& moving, const std::vector<Vec2>& fixed) {
  const double n = static_cast<double>(moving.size());
  Vec2 cm{0, 0}, cf{0, 0};
  for (std::size_t i = 0; i < moving.size(); ++i) {
    cm = cm + moving[i];
    cf = cf + fixed[i];
  }
  cm = cm * (1.0 / n);
  cf = cf * (1.0 / n);
  double sdot = 0.0, scross = 0.0;
  for (std::size_t i = 0; i < moving.size(); ++i) {
    const Vec2 m = moving[i] - cm;
    const Vec2 f = fixed[i] - cf;
    sdot += dot(m, f);
    scross += cross(m, f);
  }
  const double yaw = std::atan2(scross, sdot);
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {cf.x - (c * cm.x - s * cm.y), cf.y - (s * cm.x + c * cm.y), yaw};
}

double delta_norm(const SE2& a, const SE2& b) {
  const SE2 d = a.inverse().compose(b);
  return std::hypot(d.x, d.y) + std::abs(normalize_angle(d.yaw));
}

}  // namespace

RegistrationResult icp_register(std::span<const Point> source,
                                std::span<const Point> target,
                                const IcpConfig& config,
                                const SE2& initial_guess) {
  if (source.size() < 3 || target.size() < 3) {
    throw DomainError("icp_register needs at least 3 points per cloud");
  }

  RegistrationResult result;
  result.transform = initial_guess;
  if (collinear(source, config.collinearity_tol) ||
      collinear(target, config.collinearity_tol)) {
    result.transform = SE2{};
    result.status = RegStatus::Degenerate;
    return result;
  }

  const PointGrid grid(source, config.max_corr_dist);
  SE2 current = initial_guess;

  std::vector<Vec2> moving, fixed;
  moving.reserve(target.size());
  fixed.reserve(target.size());

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    moving.clear();
    fixed.clear();
    for (const Point& t : target) {
      const Vec2 q = current.apply({t.x, t.y});
      const std::size_t idx = grid.nearest(q, config.max_corr_dist);
      if (idx == PointGrid::npos) continue;
      moving.push_back({t.x, t.y});
      fixed.push_back({source[idx].x, source[idx].y});
    }
    result.iterations = iter;
    if (moving.size() < 3) {
      result.transform = SE2{};
      result.status = RegStatus::NoCorrespondences;
      return result;
    }
    const SE2 next = fit_rigid(moving, fixed);
    const double delta = delta_norm(current, next);
    current = next;
    if (delta < config.transform_epsilon) {
      result.converged = true;
      break;
    }
  }

  double sq_sum = 0.0;
  for (std::size_t i = 0; i < moving.size(); ++i) {
    const Vec2 r = current.apply(moving[i]) - fixed[i];
    sq_sum += r.x * r.x + r.y * r.y;
  }
  result.transform = current;
  result.rmse = std::sqrt(sq_sum / static_cast<double>(moving.size()));
  result.status = result.converged ? RegStatus::Ok : RegStatus::MaxIterations;
  return result;
}

OdometryRun chain_odometry(std::span<const PolarScan> scans,
                           const DetectorChoice& detector,
                           const IcpConfig& icp, double dt) {
  if (scans.size() < 2) throw DomainError("chain_odometry needs >= 2 scans");
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");

  std::vector<std::vector<Point>> clouds;
  clouds.reserve(scans.size());
  OdometryRun run;
  for (const PolarScan& scan : scans) {
    DetectionSet det =
        std::holds_alternative<DetectorParams>(detector)
            ? detect_scan(scan, std::get<DetectorParams>(detector))
            : k_strongest(scan, std::get<KStrongestSpec>(detector).k);
    run.detections_per_scan.push_back(det.count());
    clouds.push_back(std::move(det.points));
  }

  run.trajectory.poses.emplace_back(0.0, 0.0, 0.0, 0.0);
  SE2 pose;      // accumulated
  SE2 prev_rel;  // constant-velocity prior
  for (std::size_t k = 1; k < clouds.size(); ++k) {
    if (clouds[k - 1].size() < 3 || clouds[k].size() < 3) {
      run.failed_at = k;
      break;
    }
    const RegistrationResult reg =
        icp_register(clouds[k - 1], clouds[k], icp, prev_rel);
    if (reg.status == RegStatus::Degenerate ||
        reg.status == RegStatus::NoCorrespondences) {
      run.failed_at = k;
      break;
    }
    pose = pose.compose(reg.transform);
    prev_rel = reg.transform;
    run.trajectory.poses.emplace_back(static_cast<double>(k) * dt, pose.x,
                                      pose.y, pose.yaw);
  }
  return run;
}

}  // namespace bfar::odom
