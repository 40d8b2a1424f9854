#include "vvs/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "vvs/errors.h"
#include "vvs/predictor.h"

namespace vvs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep))
    out.push_back(trim(field));
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

double parse_number(const std::string& field, int line_no) {
  double v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw InputError("line " + std::to_string(line_no) + ": '" + field +
                     "' is not a finite number");
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  return out;
}

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Reads a headed CSV with exactly `columns` numeric fields per row.
std::vector<std::pair<int, std::vector<double>>> read_csv_rows(
    std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<std::pair<int, std::vector<double>>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const std::vector<std::string> fields = split(trim(line), ',');
    if (!have_header) {
      if (fields != header) {
        std::string want;
        for (const auto& h : header)
          want += (want.empty() ? "" : ",") + h;
        throw InputError("line " + std::to_string(line_no) +
                         ": expected header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != header.size())
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    std::vector<double> values;
    for (const auto& f : fields)
      values.push_back(parse_number(f, line_no));
    rows.emplace_back(line_no, std::move(values));
  }
  if (!have_header)
    throw InputError("file is empty");
  if (rows.empty())
    throw InputError("file has a header but no data rows");
  return rows;
}

}  // namespace

void SessionTraces::validate() const {
  if (bandwidth.empty())
    throw InputError("traces: bandwidth series is empty");
  if (poses.empty())
    throw InputError("traces: pose series is empty");
  for (size_t i = 0; i < bandwidth.size(); ++i) {
    if (!(bandwidth[i].mbps > 0))
      throw InputError("traces: bandwidth sample " + std::to_string(i) +
                       " is not positive");
    if (i > 0 && !(bandwidth[i].t > bandwidth[i - 1].t))
      throw InputError("traces: bandwidth timestamps must strictly increase");
  }
  for (size_t i = 0; i < poses.size(); ++i) {
    if (std::abs(poses[i].orientation.norm() - 1.0) > 1e-9)
      throw InputError("traces: pose " + std::to_string(i) +
                       " has a non-unit quaternion");
    if (i > 0 && !(poses[i].t > poses[i - 1].t))
      throw InputError("traces: pose timestamps must strictly increase");
  }
  if (!((content_bounds.max - content_bounds.min).minCoeff() > 0))
    throw InputError("traces: content bounds must have positive extent");
}

std::optional<Pose> pose_at(const std::vector<Pose>& poses, double t) {
  if (poses.empty() || t < poses.front().t || t > poses.back().t)
    return std::nullopt;
  auto hi = std::lower_bound(
      poses.begin(), poses.end(), t,
      [](const Pose& p, double x) { return p.t < x; });
  if (hi->t == t)
    return *hi;
  auto lo = hi - 1;
  return interpolate(*lo, *hi, (t - lo->t) / (hi->t - lo->t));
}

std::vector<BandwidthSample> parse_bandwidth_trace(std::istream& in) {
  std::vector<BandwidthSample> out;
  for (const auto& [line_no, v] : read_csv_rows(in, {"t_s", "mbps"})) {
    if (!(v[1] > 0))
      throw InputError("line " + std::to_string(line_no) +
                       ": bandwidth must be positive");
    if (!out.empty() && !(v[0] > out.back().t))
      throw InputError("line " + std::to_string(line_no) +
                       ": timestamps must strictly increase");
    out.push_back({v[0], v[1]});
  }
  return out;
}

std::vector<BandwidthSample> parse_bandwidth_trace(const std::string& path) {
  auto in = open_in(path);
  try {
    return parse_bandwidth_trace(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Pose> parse_pose_trace(std::istream& in) {
  std::vector<Pose> out;
  for (const auto& [line_no, v] :
       read_csv_rows(in, {"t_s", "x", "y", "z", "qw", "qx", "qy", "qz"})) {
    Pose p;
    p.t = v[0];
    p.position = Vec3(v[1], v[2], v[3]);
    Quat q(v[4], v[5], v[6], v[7]);
    if (std::abs(q.norm() - 1.0) > 1e-3)
      throw InputError("line " + std::to_string(line_no) +
                       ": quaternion norm " + fmt9(q.norm()) +
                       " is not within 1e-3 of 1");
    p.orientation = q.normalized();
    if (!out.empty() && !(p.t > out.back().t))
      throw InputError("line " + std::to_string(line_no) +
                       ": timestamps must strictly increase");
    out.push_back(p);
  }
  return out;
}

std::vector<Pose> parse_pose_trace(const std::string& path) {
  auto in = open_in(path);
  try {
    return parse_pose_trace(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_bandwidth_trace(std::ostream& out,
                           const std::vector<BandwidthSample>& samples) {
  out << "t_s,mbps\n";
  for (const auto& s : samples)
    out << fmt9(s.t) << ',' << fmt9(s.mbps) << '\n';
}

void write_bandwidth_trace(const std::string& path,
                           const std::vector<BandwidthSample>& samples) {
  auto out = open_out(path);
  write_bandwidth_trace(out, samples);
}

void write_pose_trace(std::ostream& out, const std::vector<Pose>& poses) {
  out << "t_s,x,y,z,qw,qx,qy,qz\n";
  for (const auto& p : poses) {
    out << fmt9(p.t) << ',' << fmt9(p.position.x()) << ','
        << fmt9(p.position.y()) << ',' << fmt9(p.position.z()) << ','
        << fmt9(p.orientation.w()) << ',' << fmt9(p.orientation.x()) << ','
        << fmt9(p.orientation.y()) << ',' << fmt9(p.orientation.z()) << '\n';
  }
}

void write_pose_trace(const std::string& path, const std::vector<Pose>& poses) {
  auto out = open_out(path);
  write_pose_trace(out, poses);
}

PointCloud read_xyz(std::istream& in) {
  PointCloud cloud;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    std::istringstream ss(t);
    std::string a, b, c;
    if (!(ss >> a >> b >> c))
      throw InputError("line " + std::to_string(line_no) +
                       ": expected 'x y z'");
    cloud.points.emplace_back(parse_number(a, line_no),
                              parse_number(b, line_no),
                              parse_number(c, line_no));
  }
  if (cloud.empty())
    throw InputError("point cloud file has no points");
  return cloud;
}

PointCloud read_xyz(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_xyz(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_density_map(std::ostream& out, const DensityMap& map) {
  out << "voxel_size,eta\n";
  for (const auto& e : map.entries())
    out << fmt9(e.voxel_size) << ',' << fmt9(e.eta) << '\n';
}

void write_density_map(const std::string& path, const DensityMap& map) {
  auto out = open_out(path);
  write_density_map(out, map);
}

DensityMap read_density_map(std::istream& in) {
  std::vector<DensityMap::Entry> entries;
  for (const auto& [line_no, v] : read_csv_rows(in, {"voxel_size", "eta"}))
    entries.push_back({v[0], v[1]});
  return DensityMap(std::move(entries));
}

DensityMap read_density_map(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_density_map(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

PsnrModel read_psnr_table(std::istream& in, bool saturate) {
  std::map<std::pair<double, double>, double> cells;
  std::vector<double> etas, ds;
  for (const auto& [line_no, v] : read_csv_rows(in, {"eta", "d", "psnr_db"})) {
    if (!cells.emplace(std::make_pair(v[0], v[1]), v[2]).second)
      throw InputError("line " + std::to_string(line_no) +
                       ": duplicate (eta, d) cell");
    etas.push_back(v[0]);
    ds.push_back(v[1]);
  }
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  PsnrModel::Table t;
  t.etas = etas;
  t.distances = ds;
  for (double e : etas) {
    for (double d : ds) {
      auto it = cells.find({e, d});
      if (it == cells.end())
        throw InputError("psnr table: missing cell eta=" + fmt9(e) +
                         " d=" + fmt9(d));
      t.psnr.push_back(it->second);
    }
  }
  return PsnrModel::tabulated(std::move(t), saturate);
}

PsnrModel read_psnr_table(const std::string& path, bool saturate) {
  auto in = open_in(path);
  try {
    return read_psnr_table(in, saturate);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace vvs
