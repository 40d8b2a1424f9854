#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "vvs/core.h"

namespace vvs {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// Camera convention: the identity orientation looks down -Z with +Y up and
// +X to the right.
struct Pose {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  Vec3 forward() const { return orientation * Vec3(0, 0, -1); }
  Vec3 up() const { return orientation * Vec3(0, 1, 0); }
  Vec3 right() const { return orientation * Vec3(1, 0, 0); }
};

// Orientation whose forward axis points from `eye` toward `target`.
Quat look_at(const Vec3& eye, const Vec3& target,
             const Vec3& world_up = Vec3::UnitY());

struct Plane {
  Vec3 normal;  // unit, pointing into the frustum
  double offset = 0.0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) + offset; }
};

struct FrustumSpec {
  double fov_h_deg = 110.0;
  double fov_v_deg = 110.0;
  double near = 0.01;
  double far = 100.0;
};

struct Frustum {
  // near, far, left, right, bottom, top
  std::array<Plane, 6> planes;
  // Near rectangle then far rectangle, each bottom-left, bottom-right,
  // top-left, top-right.
  std::array<Vec3, 8> corners;
  Vec3 right = Vec3::UnitX();
  Vec3 up = Vec3::UnitY();

  bool contains(const Vec3& p) const;
};

struct TileBox {
  Vec3 min;
  Vec3 max;

  Vec3 center() const { return 0.5 * (min + max); }
};

// Throws InputError for FoV outside (0, 180) degrees or for near/far not
// satisfying 0 < near < far.
Frustum build_frustum(const Pose& pose, const FrustumSpec& spec);
Frustum build_frustum(const Pose& pose, double fov_h_deg, double fov_v_deg,
                      double near, double far);

// Exact box/frustum overlap test (separating axes: the frustum plane
// normals, the box axes and their edge cross products).
bool tile_visibility(const Frustum& frustum, const TileBox& box);

double content_distance(const Pose& pose, const Vec3& content_center);
double tile_distance(const Pose& pose, const TileBox& box);

// Splits `bounds` into grid.l x grid.w x grid.h boxes, x fastest then y then z.
std::vector<TileBox> partition(const TileBox& bounds, const TileGrid& grid);

}  // namespace vvs
