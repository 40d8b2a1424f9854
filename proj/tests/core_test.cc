#include "vvs/core.h"

#include <gtest/gtest.h>

#include "vvs/errors.h"

namespace vvs {
namespace {

TEST(QualityLadderTest, ReferenceTileSizes) {
  const QualityLadder ladder = QualityLadder::reference();
  ASSERT_EQ(ladder.size(), 6);
  EXPECT_EQ(ladder.tile_count(), 64);
  // 651 Mbps * 1/3 s / 8 / 64 tiles = 423828.125 bytes.
  EXPECT_EQ(ladder.tile_size(ladder.top()), 423828);
  EXPECT_EQ(ladder.full_chunk_size(), 27124992);
  EXPECT_EQ(full_chunk_size(ladder), 64 * 423828);
  EXPECT_EQ(tile_size(ladder.level(0), ladder), 42383);
}

TEST(QualityLadderTest, TileSizeLinearInDensity) {
  const QualityLadder ladder = QualityLadder::reference();
  const double top = tile_size_exact(651.0, 1.0, 1.0 / 3.0, 64);
  for (const QualityLevel& lv : ladder.levels()) {
    EXPECT_DOUBLE_EQ(tile_size_exact(651.0, lv.eta, 1.0 / 3.0, 64),
                     lv.eta * top);
    EXPECT_LE(std::abs(ladder.tile_size(lv.index) - lv.eta * top), 0.5);
  }
}

TEST(QualityLadderTest, PruningCap) {
  const QualityLadder ladder = QualityLadder::reference();
  EXPECT_EQ(ladder.pruning_cap(0.05), 0);
  EXPECT_EQ(ladder.pruning_cap(0.4), 2);
  EXPECT_EQ(ladder.pruning_cap(0.41), 3);
  EXPECT_EQ(ladder.pruning_cap(1.0), 5);
}

TEST(QualityLadderTest, TruncatedKeepsChunkCap) {
  const QualityLadder ladder = QualityLadder::reference();
  const QualityLadder t = ladder.truncated(2);
  EXPECT_EQ(t.size(), 3);
  EXPECT_EQ(t.tile_size(2), ladder.tile_size(2));
  EXPECT_EQ(t.full_chunk_size(), ladder.full_chunk_size());
}

TEST(QualityLadderTest, RejectsBadLevels) {
  const TileGrid g;
  EXPECT_THROW(QualityLadder({{0, 1, 0.5, 10}, {1, 1, 0.4, 20}, {2, 1, 1, 30}},
                             1.0 / 3.0, g),
               InputError);
  EXPECT_THROW(QualityLadder({{0, 1, 0.5, 10}, {1, 1, 0.8, 20}}, 1.0 / 3.0, g),
               InputError);
  EXPECT_THROW(QualityLadder({{0, 1, 1, 10}}, 0.0, g), InputError);
  EXPECT_THROW(QualityLadder({{0, 1, 1, 10}}, 1.0, TileGrid{0, 4, 4}),
               InputError);
  EXPECT_THROW(QualityLadder({}, 1.0, g), InputError);
}

TEST(TileSelectionTest, TransmittedBytesCountsVisibleOnly) {
  const QualityLadder ladder = QualityLadder::reference();
  TileSelection sel(64);
  sel.visible[3] = true;
  sel.level[3] = 5;
  sel.visible[7] = true;
  sel.level[7] = 0;
  EXPECT_EQ(sel.visible_count(), 2);
  EXPECT_EQ(transmitted_bytes(sel, ladder), 423828 + 42383);
}

}  // namespace
}  // namespace vvs
