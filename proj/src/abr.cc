#include "vvs/abr.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "vvs/errors.h"

namespace vvs {

void ChunkDecisionInput::validate() const {
  const int n = ladder.tile_count();
  if (tiles.tile_count() != n ||
      static_cast<int>(tiles.visible.size()) != n ||
      static_cast<int>(tiles.distance.size()) != n)
    throw InputError("decision input: tile vectors must match the tile grid");
  if (!(bandwidth_mbps > 0))
    throw InputError("decision input: bandwidth must be positive");
  if (!(buffer_s >= 0))
    throw InputError("decision input: buffer must be nonnegative");
  if (!(eta_star > 0 && eta_star <= 1))
    throw InputError("decision input: eta_star must lie in (0, 1]");
}

namespace {

// Precomputed per-tile qualities and the closed-form chunk score used by all
// search routines. Visible tiles are renumbered 0..n-1 in tile order.
class ChunkObjective {
 public:
  ChunkObjective(const ChunkDecisionInput& in, const ObjectiveOptions& opts)
      : in_(in) {
    in.validate();
    const QualityLadder& ladder = in.ladder;
    cap_ = opts.prune ? ladder.pruning_cap(in.eta_star) : ladder.top();
    const PsnrModel psnr = in.psnr.with_saturation(opts.saturate &&
                                                   in.psnr.saturating());
    for (int i = 0; i < in.tiles.tile_count(); ++i) {
      if (!in.tiles.visible[i])
        continue;
      tiles_.push_back(i);
      std::vector<double> row;
      for (int l = 0; l < ladder.size(); ++l) {
        row.push_back(tile_quality(ladder.level(l).eta, in.tiles.distance[i],
                                   in.eta_star, psnr, opts.use_indicator));
      }
      values_.push_back(std::move(row));
    }
    for (int l = 0; l < ladder.size(); ++l)
      bytes_.push_back(ladder.tile_size(l));
    byte_cap_ = ladder.full_chunk_size();
    bits_per_second_ = in.bandwidth_mbps * 1e6;
  }

  int n() const { return static_cast<int>(tiles_.size()); }
  int cap() const { return cap_; }
  double value(int j, int level) const { return values_[j][level]; }
  std::int64_t bytes(int level) const { return bytes_[level]; }
  std::int64_t byte_cap() const { return byte_cap_; }

  double score(double sum, double sumsq, std::int64_t bytes) const {
    double q1 = 0, q4 = 0;
    if (!tiles_.empty()) {
      const double inv = 1.0 / static_cast<double>(tiles_.size());
      q1 = sum * inv;
      q4 = std::sqrt(std::max(sumsq * inv - q1 * q1, 0.0));
    }
    const double tau = static_cast<double>(bytes) * 8.0 / bits_per_second_;
    const double q2 = std::max(tau - in_.buffer_s, 0.0);
    const double q3 = in_.prev_q1 ? std::abs(q1 - *in_.prev_q1) : 0.0;
    return qoe_total(q1, q2, q3, q4, in_.weights);
  }

  // Selection with the given compact levels placed back on the full grid.
  TileSelection expand(const std::vector<int>& levels) const {
    TileSelection sel = in_.tiles;
    std::fill(sel.level.begin(), sel.level.end(), 0);
    for (int j = 0; j < n(); ++j)
      sel.level[tiles_[j]] = levels[j];
    return sel;
  }

  std::vector<int> compact(const TileSelection& sel) const {
    std::vector<int> levels(n());
    for (int j = 0; j < n(); ++j)
      levels[j] = sel.level[tiles_[j]];
    return levels;
  }

 private:
  const ChunkDecisionInput& in_;
  std::vector<int> tiles_;
  std::vector<std::vector<double>> values_;
  std::vector<std::int64_t> bytes_;
  std::int64_t byte_cap_ = 0;
  double bits_per_second_ = 1.0;
  int cap_ = 0;
};

// Mutable search state with running sums.
struct SearchState {
  std::vector<int> levels;
  double sum = 0;
  double sumsq = 0;
  std::int64_t bytes = 0;

  SearchState(const ChunkObjective& obj, std::vector<int> lv)
      : levels(std::move(lv)) {
    for (int j = 0; j < obj.n(); ++j) {
      const double v = obj.value(j, levels[j]);
      sum += v;
      sumsq += v * v;
      bytes += obj.bytes(levels[j]);
    }
  }

  double score_if(const ChunkObjective& obj, int j, int to) const {
    const double a = obj.value(j, levels[j]);
    const double b = obj.value(j, to);
    return obj.score(sum - a + b, sumsq - a * a + b * b,
                     bytes - obj.bytes(levels[j]) + obj.bytes(to));
  }

  void apply(const ChunkObjective& obj, int j, int to) {
    const double a = obj.value(j, levels[j]);
    const double b = obj.value(j, to);
    sum += b - a;
    sumsq += b * b - a * a;
    bytes += obj.bytes(to) - obj.bytes(levels[j]);
    levels[j] = to;
  }
};

}  // namespace

double decision_qoe(const ChunkDecisionInput& in, const TileSelection& sel,
                    const ObjectiveOptions& opts) {
  ChunkObjective obj(in, opts);
  const SearchState state(obj, obj.compact(sel));
  return obj.score(state.sum, state.sumsq, state.bytes);
}

TileSelection select_greedy(const ChunkDecisionInput& in,
                            const ObjectiveOptions& opts) {
  ChunkObjective obj(in, opts);
  const int n = obj.n();
  const int cap = obj.cap();

  SearchState state(obj, std::vector<int>(n, 0));
  double current = obj.score(state.sum, state.sumsq, state.bytes);
  std::vector<int> best_levels = state.levels;
  double best = current;

  // Upgrade path.
  for (;;) {
    int pick_j = -1, pick_l = -1;
    bool pick_gains = false;
    double pick_key = 0;
    for (int j = 0; j < n; ++j) {
      for (int l = state.levels[j] + 1; l <= cap; ++l) {
        const std::int64_t added = obj.bytes(l) - obj.bytes(state.levels[j]);
        if (state.bytes + added > obj.byte_cap())
          break;
        const double delta = state.score_if(obj, j, l) - current;
        const bool gains = delta > 0;
        const double key = gains ? delta / static_cast<double>(added) : delta;
        if (pick_j < 0 || (gains && !pick_gains) ||
            (gains == pick_gains && key > pick_key)) {
          pick_j = j;
          pick_l = l;
          pick_gains = gains;
          pick_key = key;
        }
      }
    }
    if (pick_j < 0)
      break;
    state.apply(obj, pick_j, pick_l);
    current = obj.score(state.sum, state.sumsq, state.bytes);
    if (current > best) {
      best = current;
      best_levels = state.levels;
    }
  }

  // Single-tile polish around the best point of the path.
  SearchState polish(obj, best_levels);
  current = obj.score(polish.sum, polish.sumsq, polish.bytes);
  const int max_rounds = 4 * (n + 1) * (cap + 1);
  for (int round = 0; round < max_rounds; ++round) {
    int pick_j = -1, pick_l = -1;
    double pick_delta = 1e-12 * std::max(1.0, std::abs(current));
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l <= cap; ++l) {
        if (l == polish.levels[j])
          continue;
        const std::int64_t bytes =
            polish.bytes - obj.bytes(polish.levels[j]) + obj.bytes(l);
        if (bytes > obj.byte_cap())
          continue;
        const double delta = polish.score_if(obj, j, l) - current;
        if (delta > pick_delta) {
          pick_j = j;
          pick_l = l;
          pick_delta = delta;
        }
      }
    }
    if (pick_j < 0)
      break;
    polish.apply(obj, pick_j, pick_l);
    current = obj.score(polish.sum, polish.sumsq, polish.bytes);
  }
  return obj.expand(polish.levels);
}

TileSelection select_exact(const ChunkDecisionInput& in,
                           const ExactOptions& opts) {
  ChunkObjective obj(in, opts.objective);
  const int n = obj.n();
  const int levels = obj.cap() + 1;
  if (n > opts.max_tiles || levels > opts.max_levels)
    throw InputError("select_exact: instance of " + std::to_string(n) +
                     " tiles x " + std::to_string(levels) +
                     " levels exceeds the configured bound");

  std::vector<int> cur(n, 0);
  std::vector<int> best_levels(n, 0);
  double best = -std::numeric_limits<double>::infinity();

  std::function<void(int, double, double, std::int64_t)> walk =
      [&](int j, double sum, double sumsq, std::int64_t bytes) {
        if (j == n) {
          const double s = obj.score(sum, sumsq, bytes);
          if (s > best) {
            best = s;
            best_levels = cur;
          }
          return;
        }
        for (int l = 0; l < levels; ++l) {
          const std::int64_t b = bytes + obj.bytes(l);
          if (b > obj.byte_cap())
            break;
          const double v = obj.value(j, l);
          cur[j] = l;
          walk(j + 1, sum + v, sumsq + v * v, b);
        }
        cur[j] = 0;
      };
  walk(0, 0.0, 0.0, 0);
  return obj.expand(best_levels);
}

TileSelection baseline_rate_utility(const ChunkDecisionInput& in) {
  in.validate();
  const QualityLadder& ladder = in.ladder;
  TileSelection sel = in.tiles;
  std::fill(sel.level.begin(), sel.level.end(), 0);

  std::vector<int> order;
  for (int i = 0; i < sel.tile_count(); ++i) {
    if (sel.visible[i])
      order.push_back(i);
  }
  // Utility 1/d, highest first; stable keeps lower indices ahead on ties.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sel.distance[a] < sel.distance[b];
  });

  const double budget =
      in.bandwidth_mbps * 1e6 / 8.0 * ladder.gof_duration();
  double remaining =
      budget - static_cast<double>(order.size()) * ladder.tile_size(0);
  std::int64_t total = static_cast<std::int64_t>(order.size()) *
                       ladder.tile_size(0);
  for (int i : order) {
    for (int l = ladder.top(); l > 0; --l) {
      const std::int64_t extra = ladder.tile_size(l) - ladder.tile_size(0);
      if (static_cast<double>(extra) <= remaining &&
          total + extra <= ladder.full_chunk_size()) {
        sel.level[i] = l;
        remaining -= static_cast<double>(extra);
        total += extra;
        break;
      }
    }
  }
  return sel;
}

TileSelection baseline_viewport_utility(const ChunkDecisionInput& in) {
  return select_greedy(in, ObjectiveOptions::acuity_blind());
}

DistanceBands DistanceBands::defaults(const QualityLadder& ladder, double d0,
                                      double far) {
  DistanceBands bands;
  const double base[] = {1.0, 1.5, 2.0, 3.0, 4.5};
  const int splits = ladder.size() - 1;
  double factor = 1.0;
  for (int k = 0; k < splits; ++k) {
    factor = k < 5 ? base[k] : factor * 1.5;
    bands.upper_bounds.push_back(d0 * factor);
    bands.levels.push_back(ladder.top() - k);
  }
  if (bands.upper_bounds.empty() || far > bands.upper_bounds.back()) {
    bands.upper_bounds.push_back(far);
    bands.levels.push_back(0);
  }
  return bands;
}

int DistanceBands::lookup(double distance) const {
  for (size_t k = 0; k < upper_bounds.size(); ++k) {
    if (distance < upper_bounds[k])
      return levels[k];
  }
  return 0;
}

TileSelection baseline_distance_tile(const ChunkDecisionInput& in,
                                     const DistanceBands& bands) {
  in.validate();
  if (bands.upper_bounds.size() != bands.levels.size())
    throw InputError("distance bands: bounds and levels differ in length");
  TileSelection sel = in.tiles;
  for (int i = 0; i < sel.tile_count(); ++i) {
    sel.level[i] = 0;
    if (sel.visible[i]) {
      const int l = bands.lookup(sel.distance[i]);
      if (l < 0 || l > in.ladder.top())
        throw InputError("distance bands: level out of ladder range");
      sel.level[i] = l;
    }
  }
  return sel;
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kProposed:
      return "proposed";
    case Scheme::kRateUtility:
      return "rate_utility";
    case Scheme::kViewportUtility:
      return "viewport_utility";
    case Scheme::kDistanceTile:
      return "distance_tile";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : all_schemes()) {
    if (name == scheme_name(s))
      return s;
  }
  throw InputError("unknown scheme '" + name + "'");
}

std::vector<Scheme> all_schemes() {
  return {Scheme::kProposed, Scheme::kRateUtility, Scheme::kViewportUtility,
          Scheme::kDistanceTile};
}

}  // namespace vvs
