#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vvs/density_map.h"
#include "vvs/geometry.h"

namespace vvs {

struct PointCloud {
  std::vector<Vec3> points;

  bool empty() const { return points.empty(); }
  size_t size() const { return points.size(); }
  TileBox bounds() const;
};

// Integer voxel coordinates of `p` for edge `v` anchored at `origin`
// (floor of the scaled offset, so boundary points go to the upper cell).
Eigen::Vector3i voxel_key(const Vec3& p, const Vec3& origin, double v);

// Sparse octree over integer voxel keys. Leaves sit at depth() and each
// holds the running sum of the points that fell into its voxel.
class VoxelOctree {
 public:
  VoxelOctree(const PointCloud& cloud, const Vec3& origin, double voxel);

  int depth() const { return depth_; }
  size_t leaf_count() const { return leaves_.size(); }
  // Number of occupied nodes at each level; index depth() equals
  // leaf_count(), index 0 is the root.
  std::vector<size_t> occupancy_per_level() const;
  // Leaf centroids in Morton order.
  std::vector<Vec3> centroids() const;

 private:
  struct Node {
    std::int32_t child[8] = {-1, -1, -1, -1, -1, -1, -1, -1};
    std::int32_t leaf = -1;
  };
  struct Leaf {
    Vec3 sum = Vec3::Zero();
    std::int64_t count = 0;
  };

  void collect(std::int32_t node, int level, std::vector<size_t>* occ,
               std::vector<Vec3>* out) const;

  int depth_ = 0;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
};

// One centroid per occupied voxel of edge `v`; the grid origin is the cloud's
// bounding-box minimum unless given. Throws InputError for an empty cloud or
// v <= 0.
PointCloud voxel_downsample(const PointCloud& cloud, double v);
PointCloud voxel_downsample(const PointCloud& cloud, double v,
                            const Vec3& origin);

// |downsample(v)| / |downsample(v0)|. Requires v >= v0 > 0.
double density_for_voxel(const PointCloud& cloud, double v, double v0);

// Tabulates H over `voxel_grid`, which must be ascending and start at v0.
// Any eta increase caused by grid misalignment between non-nested sizes is
// flattened to the running minimum.
DensityMap build_density_map(const PointCloud& cloud, double v0,
                             const std::vector<double>& voxel_grid);

// Per-tile variant over the tiling of the cloud's bounding box. Tiles with no
// points get std::nullopt.
std::vector<std::optional<DensityMap>> build_tile_density_maps(
    const PointCloud& cloud, const TileGrid& grid, double v0,
    const std::vector<double>& voxel_grid);

}  // namespace vvs
