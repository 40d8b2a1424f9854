#include "vvs/core.h"

#include <cmath>
#include <string>

#include "vvs/errors.h"

namespace vvs {

double tile_size_exact(double top_bitrate_mbps, double eta,
                       double gof_duration_s, int tile_count) {
  const double full_gof_bytes = top_bitrate_mbps * 1e6 / 8.0 * gof_duration_s;
  return full_gof_bytes * eta / tile_count;
}

QualityLadder::QualityLadder(std::vector<QualityLevel> levels,
                             double gof_duration_s, TileGrid grid)
    : levels_(std::move(levels)), gof_duration_s_(gof_duration_s),
      grid_(grid) {
  if (levels_.empty())
    throw InputError("quality ladder has no levels");
  if (!(gof_duration_s_ > 0))
    throw InputError("gof_duration must be positive");
  if (grid_.l <= 0 || grid_.w <= 0 || grid_.h <= 0)
    throw InputError("tile grid dimensions must be positive");
  for (size_t i = 0; i < levels_.size(); ++i) {
    const QualityLevel& lv = levels_[i];
    if (!(lv.eta > 0 && lv.eta <= 1) || !(lv.m > 0 && lv.m <= 1))
      throw InputError("level " + std::to_string(i) +
                       ": m and eta must lie in (0, 1]");
    if (!(lv.bitrate_mbps > 0))
      throw InputError("level " + std::to_string(i) +
                       ": bitrate must be positive");
    if (i > 0) {
      const QualityLevel& prev = levels_[i - 1];
      if (!(lv.eta > prev.eta) || !(lv.bitrate_mbps > prev.bitrate_mbps))
        throw InputError("level " + std::to_string(i) +
                         ": eta and bitrate must strictly increase");
      if (!(lv.m > prev.m))
        throw InputError("level " + std::to_string(i) +
                         ": eta(m) must be nondecreasing in m");
    }
    levels_[i].index = static_cast<int>(i);
  }
  if (levels_.back().eta != 1.0)
    throw InputError("top level must have eta = 1");

  const double top_rate = levels_.back().bitrate_mbps;
  for (const QualityLevel& lv : levels_) {
    tile_bytes_.push_back(std::llround(
        tile_size_exact(top_rate, lv.eta, gof_duration_s_, grid_.count())));
  }
  full_chunk_bytes_ = tile_bytes_.back() * grid_.count();
}

QualityLadder QualityLadder::reference() {
  const double eta[] = {0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
  const double mbps[] = {87.5, 161.6, 296.4, 420.7, 565.2, 651.0};
  std::vector<QualityLevel> levels;
  for (int i = 0; i < 6; ++i)
    levels.push_back({i, eta[i], eta[i], mbps[i]});
  return QualityLadder(std::move(levels), 1.0 / 3.0, TileGrid{4, 4, 4});
}

const QualityLevel& QualityLadder::level(int index) const {
  VVS_CHECK(index >= 0 && index < size(), "level index out of range");
  return levels_[index];
}

int QualityLadder::pruning_cap(double eta_star) const {
  for (const QualityLevel& lv : levels_) {
    if (lv.eta >= eta_star)
      return lv.index;
  }
  return top();
}

QualityLadder QualityLadder::truncated(int cap) const {
  VVS_CHECK(cap >= 0 && cap < size(), "truncation cap out of range");
  QualityLadder out = *this;
  out.levels_.resize(cap + 1);
  out.tile_bytes_.resize(cap + 1);
  return out;
}

std::int64_t tile_size(const QualityLevel& level, const QualityLadder& ladder) {
  return ladder.tile_size(level.index);
}

std::int64_t full_chunk_size(const QualityLadder& ladder) {
  return ladder.full_chunk_size();
}

int TileSelection::visible_count() const {
  int n = 0;
  for (bool v : visible)
    n += v ? 1 : 0;
  return n;
}

std::int64_t transmitted_bytes(const TileSelection& sel,
                               const QualityLadder& ladder) {
  std::int64_t total = 0;
  for (int i = 0; i < sel.tile_count(); ++i) {
    if (sel.visible[i])
      total += ladder.tile_size(sel.level[i]);
  }
  return total;
}

}  // namespace vvs
