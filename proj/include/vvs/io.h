#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vvs/geometry.h"
#include "vvs/qoe.h"
#include "vvs/voxelizer.h"

namespace vvs {

struct BandwidthSample {
  double t = 0.0;     // s
  double mbps = 0.0;  // holds until the next sample
};

// Time-aligned inputs of one simulated session.
struct SessionTraces {
  std::vector<BandwidthSample> bandwidth;
  std::vector<Pose> poses;
  Vec3 content_center = Vec3::Zero();
  TileBox content_bounds{Vec3(-0.5, -0.5, -0.5), Vec3(0.5, 0.5, 0.5)};

  // Throws InputError on empty series, nonincreasing timestamps, nonpositive
  // rates or non-unit quaternions.
  void validate() const;
};

// Pose at time t, interpolated between samples; nullopt outside the trace.
std::optional<Pose> pose_at(const std::vector<Pose>& poses, double t);

// Canonical CSV formats:
//   bandwidth: header "t_s,mbps"
//   poses:     header "t_s,x,y,z,qw,qx,qy,qz"
// Parse errors are InputError with the 1-based line number in the message.
std::vector<BandwidthSample> parse_bandwidth_trace(std::istream& in);
std::vector<BandwidthSample> parse_bandwidth_trace(const std::string& path);
std::vector<Pose> parse_pose_trace(std::istream& in);
std::vector<Pose> parse_pose_trace(const std::string& path);

void write_bandwidth_trace(std::ostream& out,
                           const std::vector<BandwidthSample>& samples);
void write_bandwidth_trace(const std::string& path,
                           const std::vector<BandwidthSample>& samples);
void write_pose_trace(std::ostream& out, const std::vector<Pose>& poses);
void write_pose_trace(const std::string& path, const std::vector<Pose>& poses);

// ASCII XYZ: one "x y z" triple per line; blank lines and '#' comments are
// skipped, extra columns ignored.
PointCloud read_xyz(std::istream& in);
PointCloud read_xyz(const std::string& path);

// CSV "voxel_size,eta" with header.
void write_density_map(std::ostream& out, const DensityMap& map);
void write_density_map(const std::string& path, const DensityMap& map);
DensityMap read_density_map(std::istream& in);
DensityMap read_density_map(const std::string& path);

// CSV "eta,d,psnr_db" with header; rows may come in any order but must cover
// the full eta x d grid.
PsnrModel read_psnr_table(std::istream& in, bool saturate = true);
PsnrModel read_psnr_table(const std::string& path, bool saturate = true);

}  // namespace vvs
