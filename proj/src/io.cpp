#include "bfar/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bfar::io {

namespace {

struct Sidecar {
  int num_azimuths = 0;
  int num_range_bins = 0;
  double range_resolution = 0.0;
};

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".meta";
  return p;
}

Sidecar read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(sidecar_path(path));
  if (!in) {
    throw IoError("cannot open sidecar " + sidecar_path(path).string());
  }
  Sidecar meta;
  bool have_az = false, have_bins = false, have_res = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("malformed sidecar line: " + line);
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "num_azimuths") {
        meta.num_azimuths = std::stoi(value);
        have_az = true;
      } else if (key == "num_range_bins") {
        meta.num_range_bins = std::stoi(value);
        have_bins = true;
      } else if (key == "range_resolution") {
        meta.range_resolution = std::stod(value);
        have_res = true;
      }
    } catch (const std::exception&) {
      throw IoError("malformed sidecar value: " + line);
    }
  }
  if (!have_az || !have_bins || !have_res) {
    throw IoError("sidecar missing a required key in " +
                  sidecar_path(path).string());
  }
  return meta;
}

void write_sidecar(const PolarScan& scan, const std::filesystem::path& path) {
  std::ofstream out(sidecar_path(path));
  if (!out) {
    throw IoError("cannot write sidecar " + sidecar_path(path).string());
  }
  out << "num_azimuths=" << scan.num_azimuths() << "\n"
      << "num_range_bins=" << scan.num_range_bins() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", scan.range_resolution());
  out << "range_resolution=" << buf << "\n";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PolarScan read_csv_scan(const std::filesystem::path& path,
                        const Sidecar& meta) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(meta.num_azimuths) *
                std::max(meta.num_range_bins, 0));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    int cols = 0;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || !std::isfinite(v)) {
        throw IoError("unparseable intensity '" + field + "' in " +
                      path.string());
      }
      if (v < 0.0) {
        throw IoError("negative intensity in " + path.string());
      }
      cells.push_back(v);
      ++cols;
    }
    if (cols != meta.num_range_bins) {
      throw IoError("dimension mismatch: row " + std::to_string(rows) +
                    " has " + std::to_string(cols) + " bins, sidecar says " +
                    std::to_string(meta.num_range_bins));
    }
  }
  if (rows != meta.num_azimuths) {
    throw IoError("dimension mismatch: " + std::to_string(rows) +
                  " azimuth rows, sidecar says " +
                  std::to_string(meta.num_azimuths));
  }
  return PolarScan(meta.num_azimuths, meta.num_range_bins,
                   meta.range_resolution, std::move(cells));
}

PolarScan read_pgm_scan(const std::filesystem::path& path,
                        const Sidecar& meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    int c = in.get();
    // skip whitespace and '#' comment lines
    while (c != EOF && (std::isspace(c) || c == '#')) {
      if (c == '#') {
        while (c != EOF && c != '\n') c = in.get();
      }
      c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      c = in.get();
    }
    if (tok.empty()) throw IoError("truncated PGM header in " + path.string());
    return tok;
  };

  if (next_token() != "P5") {
    throw IoError("not a binary PGM (expected P5) in " + path.string());
  }
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(next_token());
    height = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw IoError("malformed PGM header in " + path.string());
  }
  if (maxval != 255) {
    throw IoError("PGM maxval must be 255 in " + path.string());
  }
  if (width != meta.num_range_bins || height != meta.num_azimuths) {
    throw IoError("dimension mismatch between PGM header and sidecar for " +
                  path.string());
  }
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<unsigned char> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw IoError("truncated PGM payload in " + path.string());
  }
  std::vector<double> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i] = static_cast<double>(raw[i]);
  return PolarScan(meta.num_azimuths, meta.num_range_bins,
                   meta.range_resolution, std::move(cells));
}

}  // namespace

PolarScan read_scan(const std::filesystem::path& path, ScanFormat format) {
  const Sidecar meta = read_sidecar(path);
  switch (format) {
    case ScanFormat::CsvFloat:
      return read_csv_scan(path, meta);
    case ScanFormat::Pgm8:
      return read_pgm_scan(path, meta);
  }
  throw IoError("unknown scan format");
}

void write_scan(const PolarScan& scan, const std::filesystem::path& path,
                ScanFormat format) {
  write_sidecar(scan, path);
  if (format == ScanFormat::CsvFloat) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (int az = 0; az < scan.num_azimuths(); ++az) {
      for (int bin = 0; bin < scan.num_range_bins(); ++bin) {
        if (bin) out << ',';
        out << format_double(scan.at(az, bin));
      }
      out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n"
        << scan.num_range_bins() << ' ' << scan.num_azimuths() << "\n255\n";
    std::vector<unsigned char> raw(scan.cell_count());
    const auto& cells = scan.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      // saturate to 255, truncate toward zero
      const double v = cells[i];
      raw[i] = v >= 255.0 ? 255 : static_cast<unsigned char>(v);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failed for " + path.string());
  }
}

void write_point_cloud(std::span<const Point> points,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "x,y,intensity\n";
  for (const Point& p : points) {
    out << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.intensity) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Point> read_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,y,intensity") {
    throw IoError("missing point cloud header in " + path.string());
  }
  std::vector<Point> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Point p;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.x, &p.y, &p.intensity) !=
        3) {
      throw IoError("malformed point row: " + line);
    }
    points.push_back(p);
  }
  return points;
}

void write_trajectory(const Trajectory& traj,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "t,x,y,yaw\n";
  for (const Pose2D& p : traj.poses) {
    out << format_double(p.t) << ',' << format_double(p.x) << ','
        << format_double(p.y) << ',' << format_double(p.yaw) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,yaw") {
    throw IoError("missing trajectory header in " + path.string());
  }
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, x, y, yaw;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &x, &y, &yaw) != 4) {
      throw IoError("malformed trajectory row: " + line);
    }
    traj.poses.emplace_back(t, x, y, yaw);
  }
  traj.validate();
  return traj;
}

}  // namespace bfar::io
