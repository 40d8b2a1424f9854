#include "vvs/voxelizer.h"

#include <cmath>
#include <random>
#include <tuple>
#include <unordered_set>

#include <gtest/gtest.h>

#include "vvs/errors.h"

namespace vvs {
namespace {

struct KeyHash {
  size_t operator()(const std::tuple<long, long, long>& k) const {
    return std::hash<long>()(std::get<0>(k)) * 73856093u ^
           std::hash<long>()(std::get<1>(k)) * 19349663u ^
           std::hash<long>()(std::get<2>(k)) * 83492791u;
  }
};

size_t hash_grid_count(const PointCloud& c, double v) {
  const Vec3 lo = c.bounds().min;
  std::unordered_set<std::tuple<long, long, long>, KeyHash> cells;
  for (const Vec3& p : c.points) {
    cells.insert({static_cast<long>(std::floor((p.x() - lo.x()) / v)),
                  static_cast<long>(std::floor((p.y() - lo.y()) / v)),
                  static_cast<long>(std::floor((p.z() - lo.z()) / v))});
  }
  return cells.size();
}

PointCloud uniform_cloud(int n, double extent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, extent);
  PointCloud c;
  for (int i = 0; i < n; ++i)
    c.points.emplace_back(u(rng), u(rng), u(rng));
  return c;
}

// Dense square lattice in the z = 0 plane, spacing s.
PointCloud plane_cloud(int side, double s) {
  PointCloud c;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j)
      c.points.emplace_back(i * s, j * s, 0.0);
  }
  return c;
}

TEST(VoxelizerTest, MatchesHashGridCount) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const PointCloud c = uniform_cloud(20000, 1.3, seed);
    for (double v : {0.01, 0.037, 0.1, 0.5}) {
      EXPECT_EQ(voxel_downsample(c, v).size(), hash_grid_count(c, v))
          << "seed " << seed << " v " << v;
    }
  }
}

TEST(VoxelizerTest, OctreeAgreesWithDownsample) {
  const PointCloud c = uniform_cloud(5000, 1.0, 9);
  const VoxelOctree tree(c, c.bounds().min, 0.05);
  EXPECT_EQ(tree.leaf_count(), voxel_downsample(c, 0.05).size());
  const std::vector<size_t> occ = tree.occupancy_per_level();
  ASSERT_EQ(static_cast<int>(occ.size()), tree.depth() + 1);
  EXPECT_EQ(occ.front(), 1u);
  EXPECT_EQ(occ.back(), tree.leaf_count());
  for (size_t i = 1; i < occ.size(); ++i)
    EXPECT_GE(occ[i], occ[i - 1]);
}

TEST(VoxelizerTest, CentroidOfSingleVoxel) {
  PointCloud c;
  c.points = {Vec3(0, 0, 0), Vec3(0.2, 0, 0), Vec3(0, 0.4, 0.6)};
  const PointCloud d = voxel_downsample(c, 1.0);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(d.points[0].isApprox(Vec3(0.2 / 3, 0.4 / 3, 0.2)));
}

TEST(VoxelizerTest, PlanarDensityFallsAsInverseSquare) {
  // 256 x 256 lattice; doubling the voxel quarters the occupied cells.
  const double s = 0.0078125;
  const PointCloud c = plane_cloud(256, s);
  EXPECT_NEAR(density_for_voxel(c, 2 * s, s), 0.25, 0.25 * 0.25);
  EXPECT_NEAR(density_for_voxel(c, 4 * s, s), 0.0625, 0.0625 * 0.25);
}

TEST(VoxelizerTest, VolumetricDensityFallsAsInverseCube) {
  const double s = 0.0078125;
  PointCloud c;
  for (int i = 0; i < 48; ++i) {
    for (int j = 0; j < 48; ++j) {
      for (int k = 0; k < 48; ++k)
        c.points.emplace_back(i * s, j * s, k * s);
    }
  }
  EXPECT_NEAR(density_for_voxel(c, 2 * s, s), 0.125, 0.125 * 0.25);
  EXPECT_NEAR(density_for_voxel(c, 4 * s, s), 0.015625, 0.015625 * 0.25);
}

TEST(VoxelizerTest, DensityMapIsMonotoneAndStartsAtOne) {
  const PointCloud c = uniform_cloud(30000, 1.0, 4);
  const double v0 = 0.01;
  const DensityMap map =
      build_density_map(c, v0, {v0, 1.5 * v0, 2 * v0, 3 * v0, 4 * v0, 8 * v0});
  EXPECT_DOUBLE_EQ(map.entries().front().eta, 1.0);
  for (size_t i = 1; i < map.entries().size(); ++i)
    EXPECT_LE(map.entries()[i].eta, map.entries()[i - 1].eta);
}

TEST(VoxelizerTest, PerTileMapsSkipEmptyTiles) {
  PointCloud c = plane_cloud(64, 0.015625);  // fills z = 0 only
  c.points.emplace_back(0, 0, 1.0);          // stretch bounds along z
  const auto maps =
      build_tile_density_maps(c, TileGrid{2, 2, 2}, 0.015625,
                              {0.015625, 0.03125});
  ASSERT_EQ(maps.size(), 8u);
  int present = 0;
  for (const auto& m : maps)
    present += m.has_value() ? 1 : 0;
  EXPECT_EQ(present, 5);  // four z = 0 tiles plus the lone point's tile
}

TEST(VoxelizerTest, RejectsBadInput) {
  EXPECT_THROW(voxel_downsample(PointCloud{}, 0.1), InputError);
  EXPECT_THROW(voxel_downsample(uniform_cloud(10, 1, 1), 0.0), InputError);
  EXPECT_THROW(density_for_voxel(uniform_cloud(10, 1, 1), 0.01, 0.02),
               InputError);
  EXPECT_THROW(build_density_map(uniform_cloud(10, 1, 1), 0.01, {0.02, 0.04}),
               InputError);
}

}  // namespace
}  // namespace vvs
