#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vvs {

// One rung of the per-tile quality ladder. `m` is the downsampling factor a
// server uses to produce the level and `eta` is the point-level density it
// retains relative to the source.
struct QualityLevel {
  int index = 0;
  double m = 1.0;
  double eta = 1.0;
  double bitrate_mbps = 0.0;  // whole-content rate, informational
};

struct TileGrid {
  int l = 4;
  int w = 4;
  int h = 4;

  int count() const { return l * w * h; }
};

class QualityLadder {
 public:
  // Throws InputError if the levels are not strictly increasing in eta and
  // bitrate, if eta(m) decreases, if the top level is not eta = 1, or if the
  // grid/duration are degenerate.
  QualityLadder(std::vector<QualityLevel> levels, double gof_duration_s,
                TileGrid grid);

  // Six-level ladder of the reference dataset: 64 tiles, 1/3 s GoFs.
  static QualityLadder reference();

  const std::vector<QualityLevel>& levels() const { return levels_; }
  const QualityLevel& level(int index) const;
  int size() const { return static_cast<int>(levels_.size()); }
  int top() const { return size() - 1; }
  double gof_duration() const { return gof_duration_s_; }
  const TileGrid& grid() const { return grid_; }
  int tile_count() const { return grid_.count(); }

  // Bytes for one tile of one GoF at `level`, rounded once to whole bytes.
  std::int64_t tile_size(int level) const { return tile_bytes_[level]; }
  // Hard cap on transmitted bytes per GoF; truncated ladders keep the
  // original value.
  std::int64_t full_chunk_size() const { return full_chunk_bytes_; }

  // Lowest level whose density reaches `eta_star`, or the top level if none.
  int pruning_cap(double eta_star) const;

  // Same levels, durations and grid but with the levels above `cap` dropped.
  QualityLadder truncated(int cap) const;

 private:
  std::vector<QualityLevel> levels_;
  double gof_duration_s_;
  TileGrid grid_;
  std::vector<std::int64_t> tile_bytes_;
  std::int64_t full_chunk_bytes_ = 0;
};

// Exact (unrounded) per-tile byte count behind QualityLadder::tile_size.
double tile_size_exact(double top_bitrate_mbps, double eta,
                       double gof_duration_s, int tile_count);

std::int64_t tile_size(const QualityLevel& level, const QualityLadder& ladder);
std::int64_t full_chunk_size(const QualityLadder& ladder);

// Per-tile decision for one GoF. Tiles with `visible == false` are never
// transmitted; their level is recorded as the lowest level.
struct TileSelection {
  std::vector<int> level;
  std::vector<bool> visible;
  std::vector<double> distance;

  TileSelection() = default;
  explicit TileSelection(int tile_count)
      : level(tile_count, 0), visible(tile_count, false),
        distance(tile_count, 0.0) {}

  int tile_count() const { return static_cast<int>(level.size()); }
  int visible_count() const;
};

// Sum of tile sizes over visible tiles.
std::int64_t transmitted_bytes(const TileSelection& sel,
                               const QualityLadder& ladder);

}  // namespace vvs
