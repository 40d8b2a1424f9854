#include "vvs/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vvs/errors.h"

namespace vvs {

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

Plane to_world(const Vec3& normal_cam, double offset_cam, const Pose& pose) {
  // A camera-frame plane n.x + c = 0 maps to (R n).y + c - (R n).p = 0.
  Plane p;
  p.normal = pose.orientation * normal_cam;
  p.offset = offset_cam - p.normal.dot(pose.position);
  return p;
}

}  // namespace

Quat look_at(const Vec3& eye, const Vec3& target, const Vec3& world_up) {
  Vec3 fwd = target - eye;
  if (fwd.norm() < 1e-12)
    return Quat::Identity();
  fwd.normalize();
  Vec3 right = fwd.cross(world_up);
  if (right.norm() < 1e-9)
    right = fwd.cross(Vec3::UnitX());
  right.normalize();
  Vec3 up = right.cross(fwd);
  Eigen::Matrix3d rot;
  rot.col(0) = right;
  rot.col(1) = up;
  rot.col(2) = -fwd;
  Quat q(rot);
  q.normalize();
  return q;
}

bool Frustum::contains(const Vec3& p) const {
  for (const Plane& pl : planes) {
    if (pl.signed_distance(p) < 0)
      return false;
  }
  return true;
}

Frustum build_frustum(const Pose& pose, const FrustumSpec& spec) {
  return build_frustum(pose, spec.fov_h_deg, spec.fov_v_deg, spec.near,
                       spec.far);
}

Frustum build_frustum(const Pose& pose, double fov_h_deg, double fov_v_deg,
                      double near, double far) {
  if (!(fov_h_deg > 0 && fov_h_deg < 180) ||
      !(fov_v_deg > 0 && fov_v_deg < 180))
    throw InputError("frustum: field of view must lie in (0, 180) degrees");
  if (!(near > 0 && near < far))
    throw InputError("frustum: require 0 < near < far");

  const double ah = deg_to_rad(fov_h_deg) / 2;
  const double av = deg_to_rad(fov_v_deg) / 2;
  // Depth along the view axis is -z in camera coordinates.
  Frustum f;
  f.planes[0] = to_world(Vec3(0, 0, -1), -near, pose);
  f.planes[1] = to_world(Vec3(0, 0, 1), far, pose);
  f.planes[2] = to_world(Vec3(std::cos(ah), 0, -std::sin(ah)), 0, pose);
  f.planes[3] = to_world(Vec3(-std::cos(ah), 0, -std::sin(ah)), 0, pose);
  f.planes[4] = to_world(Vec3(0, std::cos(av), -std::sin(av)), 0, pose);
  f.planes[5] = to_world(Vec3(0, -std::cos(av), -std::sin(av)), 0, pose);
  f.right = pose.orientation * Vec3::UnitX();
  f.up = pose.orientation * Vec3::UnitY();
  int k = 0;
  for (double depth : {near, far}) {
    const double hx = depth * std::tan(ah), hy = depth * std::tan(av);
    for (double sy : {-1.0, 1.0}) {
      for (double sx : {-1.0, 1.0})
        f.corners[k++] = pose.orientation * Vec3(sx * hx, sy * hy, -depth) +
                         pose.position;
    }
  }
  return f;
}

bool tile_visibility(const Frustum& frustum, const TileBox& box) {
  for (const Plane& pl : frustum.planes) {
    // Corner farthest along the inward normal.
    const Vec3 pv(pl.normal.x() >= 0 ? box.max.x() : box.min.x(),
                  pl.normal.y() >= 0 ? box.max.y() : box.min.y(),
                  pl.normal.z() >= 0 ? box.max.z() : box.min.z());
    if (pl.signed_distance(pv) < 0)
      return false;
  }
  // Box faces against the frustum corners.
  for (int a = 0; a < 3; ++a) {
    double lo = frustum.corners[0][a], hi = lo;
    for (const Vec3& c : frustum.corners) {
      lo = std::min(lo, c[a]);
      hi = std::max(hi, c[a]);
    }
    if (hi < box.min[a] || lo > box.max[a])
      return false;
  }
  // Edge-edge axes.
  const std::array<Vec3, 6> edges = {
      frustum.right,
      frustum.up,
      frustum.corners[4] - frustum.corners[0],
      frustum.corners[5] - frustum.corners[1],
      frustum.corners[6] - frustum.corners[2],
      frustum.corners[7] - frustum.corners[3]};
  const Vec3 center = box.center();
  const Vec3 half = 0.5 * (box.max - box.min);
  for (int a = 0; a < 3; ++a) {
    for (const Vec3& e : edges) {
      const Vec3 axis = Vec3::Unit(a).cross(e);
      const double len = axis.norm();
      if (len < 1e-12 * e.norm())
        continue;
      const double r = half.dot(axis.cwiseAbs());
      const double c = center.dot(axis);
      double lo = frustum.corners[0].dot(axis), hi = lo;
      for (const Vec3& v : frustum.corners) {
        const double d = v.dot(axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      if (hi < c - r || lo > c + r)
        return false;
    }
  }
  return true;
}

double content_distance(const Pose& pose, const Vec3& content_center) {
  return (pose.position - content_center).norm();
}

double tile_distance(const Pose& pose, const TileBox& box) {
  return (pose.position - box.center()).norm();
}

std::vector<TileBox> partition(const TileBox& bounds, const TileGrid& grid) {
  VVS_CHECK(grid.count() > 0, "empty tile grid");
  const Vec3 extent = bounds.max - bounds.min;
  const Vec3 step(extent.x() / grid.l, extent.y() / grid.w,
                  extent.z() / grid.h);
  std::vector<TileBox> boxes;
  boxes.reserve(grid.count());
  for (int k = 0; k < grid.h; ++k) {
    for (int j = 0; j < grid.w; ++j) {
      for (int i = 0; i < grid.l; ++i) {
        TileBox b;
        b.min = bounds.min + Vec3(i * step.x(), j * step.y(), k * step.z());
        // Last cell on each axis ends exactly on the bounds.
        b.max = Vec3(i + 1 == grid.l ? bounds.max.x() : b.min.x() + step.x(),
                     j + 1 == grid.w ? bounds.max.y() : b.min.y() + step.y(),
                     k + 1 == grid.h ? bounds.max.z() : b.min.z() + step.z());
        boxes.push_back(b);
      }
    }
  }
  return boxes;
}

}  // namespace vvs
