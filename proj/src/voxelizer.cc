#include "vvs/voxelizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vvs/errors.h"

namespace vvs {

namespace {

void require_cloud(const PointCloud& cloud, double v) {
  if (cloud.empty())
    throw InputError("voxelizer: point cloud is empty");
  if (!(v > 0))
    throw InputError("voxelizer: voxel size must be positive");
}

}  // namespace

TileBox PointCloud::bounds() const {
  VVS_CHECK(!points.empty(), "bounds of an empty cloud");
  TileBox b{points.front(), points.front()};
  for (const Vec3& p : points) {
    b.min = b.min.cwiseMin(p);
    b.max = b.max.cwiseMax(p);
  }
  return b;
}

Eigen::Vector3i voxel_key(const Vec3& p, const Vec3& origin, double v) {
  const Vec3 rel = (p - origin) / v;
  return Eigen::Vector3i(static_cast<int>(std::floor(rel.x())),
                         static_cast<int>(std::floor(rel.y())),
                         static_cast<int>(std::floor(rel.z())));
}

VoxelOctree::VoxelOctree(const PointCloud& cloud, const Vec3& origin,
                         double voxel) {
  require_cloud(cloud, voxel);
  const TileBox b = cloud.bounds();
  const Vec3 span = (b.max - origin) / voxel;
  if (span.maxCoeff() >= double(1 << 30) || (b.min - origin).minCoeff() < 0)
    throw InputError("voxelizer: voxel size too small for the cloud extent "
                     "or origin above the cloud minimum");

  std::vector<Eigen::Vector3i> keys;
  keys.reserve(cloud.size());
  int max_key = 0;
  for (const Vec3& p : cloud.points) {
    keys.push_back(voxel_key(p, origin, voxel));
    max_key = std::max(max_key, keys.back().maxCoeff());
  }
  while ((1 << depth_) <= max_key)
    ++depth_;

  nodes_.emplace_back();
  for (size_t i = 0; i < keys.size(); ++i) {
    const Eigen::Vector3i& k = keys[i];
    std::int32_t node = 0;
    for (int level = depth_ - 1; level >= 0; --level) {
      const int child = ((k.x() >> level) & 1) | (((k.y() >> level) & 1) << 1) |
                        (((k.z() >> level) & 1) << 2);
      if (nodes_[node].child[child] < 0) {
        nodes_[node].child[child] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      node = nodes_[node].child[child];
    }
    if (nodes_[node].leaf < 0) {
      nodes_[node].leaf = static_cast<std::int32_t>(leaves_.size());
      leaves_.emplace_back();
    }
    Leaf& leaf = leaves_[nodes_[node].leaf];
    leaf.sum += cloud.points[i];
    ++leaf.count;
  }
}

void VoxelOctree::collect(std::int32_t node, int level,
                          std::vector<size_t>* occ,
                          std::vector<Vec3>* out) const {
  const Node& n = nodes_[node];
  if (occ)
    ++(*occ)[level];
  if (n.leaf >= 0) {
    if (out) {
      const Leaf& leaf = leaves_[n.leaf];
      out->push_back(leaf.sum / static_cast<double>(leaf.count));
    }
    return;
  }
  for (std::int32_t c : n.child) {
    if (c >= 0)
      collect(c, level + 1, occ, out);
  }
}

std::vector<size_t> VoxelOctree::occupancy_per_level() const {
  std::vector<size_t> occ(depth_ + 1, 0);
  collect(0, 0, &occ, nullptr);
  return occ;
}

std::vector<Vec3> VoxelOctree::centroids() const {
  std::vector<Vec3> out;
  out.reserve(leaves_.size());
  collect(0, 0, nullptr, &out);
  return out;
}

PointCloud voxel_downsample(const PointCloud& cloud, double v) {
  require_cloud(cloud, v);
  return voxel_downsample(cloud, v, cloud.bounds().min);
}

PointCloud voxel_downsample(const PointCloud& cloud, double v,
                            const Vec3& origin) {
  VoxelOctree tree(cloud, origin, v);
  return PointCloud{tree.centroids()};
}

double density_for_voxel(const PointCloud& cloud, double v, double v0) {
  require_cloud(cloud, v0);
  if (!(v >= v0))
    throw InputError("voxelizer: density requires v >= v0");
  const Vec3 origin = cloud.bounds().min;
  const double fine =
      static_cast<double>(VoxelOctree(cloud, origin, v0).leaf_count());
  const double coarse =
      static_cast<double>(VoxelOctree(cloud, origin, v).leaf_count());
  return coarse / fine;
}

namespace {

DensityMap tabulate(const PointCloud& cloud, const Vec3& origin, double v0,
                    const std::vector<double>& voxel_grid) {
  if (voxel_grid.empty())
    throw InputError("voxelizer: voxel grid is empty");
  if (std::abs(voxel_grid.front() - v0) > 1e-12 * v0)
    throw InputError("voxelizer: voxel grid must start at v0");
  for (size_t i = 1; i < voxel_grid.size(); ++i) {
    if (!(voxel_grid[i] > voxel_grid[i - 1]))
      throw InputError("voxelizer: voxel grid must be strictly ascending");
  }
  const double fine =
      static_cast<double>(VoxelOctree(cloud, origin, v0).leaf_count());
  std::vector<DensityMap::Entry> entries;
  entries.push_back({v0, 1.0});
  for (size_t i = 1; i < voxel_grid.size(); ++i) {
    const double coarse = static_cast<double>(
        VoxelOctree(cloud, origin, voxel_grid[i]).leaf_count());
    const double eta = std::min(coarse / fine, entries.back().eta);
    entries.push_back({voxel_grid[i], eta});
  }
  return DensityMap(std::move(entries));
}

}  // namespace

DensityMap build_density_map(const PointCloud& cloud, double v0,
                             const std::vector<double>& voxel_grid) {
  require_cloud(cloud, v0);
  return tabulate(cloud, cloud.bounds().min, v0, voxel_grid);
}

std::vector<std::optional<DensityMap>> build_tile_density_maps(
    const PointCloud& cloud, const TileGrid& grid, double v0,
    const std::vector<double>& voxel_grid) {
  require_cloud(cloud, v0);
  const TileBox bounds = cloud.bounds();
  const Vec3 extent = bounds.max - bounds.min;
  std::vector<PointCloud> per_tile(grid.count());
  const int dims[3] = {grid.l, grid.w, grid.h};
  for (const Vec3& p : cloud.points) {
    int idx[3];
    for (int a = 0; a < 3; ++a) {
      const double f = extent[a] > 0 ? (p[a] - bounds.min[a]) / extent[a] : 0;
      idx[a] = std::clamp(static_cast<int>(std::floor(f * dims[a])), 0,
                          dims[a] - 1);
    }
    per_tile[idx[0] + grid.l * (idx[1] + grid.w * idx[2])].points.push_back(p);
  }
  std::vector<std::optional<DensityMap>> maps;
  for (const PointCloud& tile : per_tile) {
    if (tile.empty())
      maps.emplace_back(std::nullopt);
    else
      maps.emplace_back(tabulate(tile, bounds.min, v0, voxel_grid));
  }
  return maps;
}

}  // namespace vvs
