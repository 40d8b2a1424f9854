#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vvs/abr.h"
#include "vvs/acuity.h"
#include "vvs/core.h"
#include "vvs/geometry.h"
#include "vvs/io.h"
#include "vvs/qoe.h"

namespace vvs {

enum class PredictionMode {
  kHistory,  // harmonic-mean bandwidth, constant-velocity pose
  kOracle,   // ground-truth pose and trace-average bandwidth
};

struct SessionConfig {
  QualityLadder ladder = QualityLadder::reference();
  AcuityParams acuity;
  DensityModel density = ParametricDensity{};
  PsnrModel psnr = PsnrModel::parametric({});
  QoEWeights weights;
  Scheme scheme = Scheme::kProposed;
  FrustumSpec frustum;
  std::optional<DistanceBands> bands;  // defaults derived from the ladder
  double buffer_capacity_s = 2.0 / 3.0;
  PredictionMode prediction = PredictionMode::kHistory;
  size_t bandwidth_window = 5;
  size_t history_capacity = 10;
  int num_chunks = 0;  // 0: as many whole GoFs as the pose trace covers
  std::uint64_t seed = 1;

  // Throws InputError if any sub-config is invalid.
  void validate() const;
  DistanceBands effective_bands() const;
};

struct ChunkReport {
  int index = 0;
  std::vector<int> levels;
  std::vector<bool> transmitted;  // visibility under the decision pose
  std::vector<bool> visible;      // visibility under the playback pose
  std::vector<double> distance;   // tile distances under the playback pose
  std::int64_t bytes = 0;
  double download_start = 0.0;
  double tau = 0.0;
  double buffer_before = 0.0;
  double buffer_after = 0.0;
  double idle = 0.0;  // wait before the next request because the buffer is full
  double predicted_mbps = 0.0;
  double realized_mbps = 0.0;
  QoEBreakdown qoe;
  double eta_star = 1.0;           // at the playback pose
  double eta_star_decision = 1.0;  // at the predicted pose
  bool eta_clamped = false;
  int visible_count = 0;
  double d_t = 0.0;
};

struct SessionSummary {
  std::string scheme;
  int chunks = 0;
  double mean_q1 = 0.0;
  double total_q2 = 0.0;
  double mean_q3 = 0.0;
  double mean_q4 = 0.0;
  double total_qoe = 0.0;
  double mean_qoe = 0.0;
  std::int64_t total_bytes = 0;
  double startup_delay = 0.0;
  int no_visible_chunks = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

struct SessionResult {
  std::vector<ChunkReport> chunks;
  SessionSummary summary;
};

// Piecewise-constant bandwidth: each sample's rate holds until the next
// sample. The last sample holds for one more inter-sample gap, or forever
// for a single-sample trace.
class BandwidthTimeline {
 public:
  explicit BandwidthTimeline(std::vector<BandwidthSample> samples);

  double start() const { return samples_.front().t; }
  double end() const { return end_; }
  // Time at which `bytes` finish downloading when started at `start`;
  // nullopt if the trace ends first.
  std::optional<double> finish_time(double start, std::int64_t bytes) const;
  // Mean rate over [a, b], clipped to the trace.
  double mean_mbps(double a, double b) const;

 private:
  std::vector<BandwidthSample> samples_;
  double end_;
};

SessionResult run_session(const SessionConfig& cfg,
                          const SessionTraces& traces);

// One (video, bandwidth trace, user trace) combination of an experiment.
struct ExperimentCell {
  std::string video;
  std::string bandwidth;
  std::string user;
  SessionTraces traces;
};

struct ExperimentRow {
  Scheme scheme;
  std::string video;
  std::string bandwidth;
  std::string user;
  SessionSummary summary;
  // mean_qoe divided by the best mean_qoe among schemes on the same cell.
  double normalized_qoe = 0.0;
  std::vector<QoEBreakdown> per_chunk;
  std::vector<std::int64_t> per_chunk_bytes;
};

struct ExperimentResult {
  // Sorted by (video, bandwidth, user, scheme order).
  std::vector<ExperimentRow> rows;
};

// Runs every scheme on every cell. Sessions may run on `threads` workers;
// rows are ordered by key, never by completion.
ExperimentResult run_experiment(const SessionConfig& base,
                                const std::vector<Scheme>& schemes,
                                const std::vector<ExperimentCell>& cells,
                                int threads = 1);

}  // namespace vvs
