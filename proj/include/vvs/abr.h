#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vvs/core.h"
#include "vvs/qoe.h"

namespace vvs {

// Everything a per-chunk quality decision may look at.
struct ChunkDecisionInput {
  // Visibility and distances; levels are ignored.
  TileSelection tiles = TileSelection(TileGrid{}.count());
  double eta_star = 1.0;
  double bandwidth_mbps = 1.0;
  double buffer_s = 0.0;
  std::optional<double> prev_q1;
  QualityLadder ladder = QualityLadder::reference();
  QoEWeights weights;
  PsnrModel psnr = PsnrModel::parametric({});

  // Throws InputError on inconsistent lengths, nonpositive bandwidth,
  // negative buffer or eta_star outside (0, 1].
  void validate() const;
};

// How a solver scores candidate selections.
struct ObjectiveOptions {
  bool use_indicator = true;  // apply the acuity indicator to PSNR
  bool saturate = true;       // PSNR saturates at eta_star
  bool prune = true;          // never consider levels above the pruning cap

  static ObjectiveOptions acuity_aware() { return {true, true, true}; }
  static ObjectiveOptions acuity_blind() { return {false, false, false}; }
};

// Per-chunk QoE of `sel` under the decision model (Q3 against prev_q1).
double decision_qoe(const ChunkDecisionInput& in, const TileSelection& sel,
                    const ObjectiveOptions& opts = {});

// Utility-per-byte upgrade search. Starting from the lowest level on every
// visible tile it repeatedly applies the single-tile upgrade with the best
// QoE gain per added byte (or, when no upgrade gains, the least-losing one)
// until every tile reaches the cap, remembers the best selection seen on
// that path, then polishes it with single-tile moves until none improves.
TileSelection select_greedy(const ChunkDecisionInput& in,
                            const ObjectiveOptions& opts = {});

struct ExactOptions {
  int max_tiles = 8;
  int max_levels = 6;
  ObjectiveOptions objective;
};

// Exhaustive search over the level vectors of the visible tiles; returns the
// lexicographically smallest maximizer. Throws InputError when the instance
// exceeds the configured bound.
TileSelection select_exact(const ChunkDecisionInput& in,
                           const ExactOptions& opts = {});

// Rate/utility baseline: every visible tile first gets the lowest level, then
// tiles in order of utility 1/d take the highest level that still fits in
// the remaining per-GoF budget BW * gof_duration.
TileSelection baseline_rate_utility(const ChunkDecisionInput& in);

// Viewport/utility baseline: the upgrade search with the acuity indicator
// disabled, no saturation and no pruning.
TileSelection baseline_viewport_utility(const ChunkDecisionInput& in);

// Maps tile distance to level. upper_bounds[k] closes band k; distances at or
// beyond the last bound get the lowest level.
struct DistanceBands {
  std::vector<double> upper_bounds;
  std::vector<int> levels;

  // Splits at d0 * {1, 1.5, 2, 3, 4.5, ...} with the nearest band at the top
  // level and the band beyond the last split at the lowest level.
  static DistanceBands defaults(const QualityLadder& ladder, double d0,
                                double far);
  int lookup(double distance) const;
};

TileSelection baseline_distance_tile(const ChunkDecisionInput& in,
                                     const DistanceBands& bands);

enum class Scheme { kProposed, kRateUtility, kViewportUtility, kDistanceTile };

const char* scheme_name(Scheme s);
// Throws InputError for unknown names.
Scheme parse_scheme(const std::string& name);
std::vector<Scheme> all_schemes();

}  // namespace vvs
