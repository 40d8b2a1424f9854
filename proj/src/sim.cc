#include "vvs/sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "vvs/errors.h"
#include "vvs/predictor.h"

namespace vvs {

namespace {

constexpr double kMinViewingDistance = 1e-3;

ObjectiveOptions objective_for(Scheme s) {
  return s == Scheme::kViewportUtility ? ObjectiveOptions::acuity_blind()
                                       : ObjectiveOptions::acuity_aware();
}

TileSelection decide(const SessionConfig& cfg, const DistanceBands& bands,
                     const ChunkDecisionInput& in) {
  switch (cfg.scheme) {
    case Scheme::kProposed:
      return select_greedy(in, ObjectiveOptions::acuity_aware());
    case Scheme::kRateUtility:
      return baseline_rate_utility(in);
    case Scheme::kViewportUtility:
      return baseline_viewport_utility(in);
    case Scheme::kDistanceTile:
      return baseline_distance_tile(in, bands);
  }
  throw InvariantError("unhandled scheme");
}

// Q1 of `sel` as the deciding scheme sees it.
double decision_q1(const ChunkDecisionInput& in, const TileSelection& sel,
                   const ObjectiveOptions& opts) {
  const PsnrModel psnr =
      in.psnr.with_saturation(opts.saturate && in.psnr.saturating());
  const std::vector<double> v = visible_tile_qualities(
      sel, in.ladder, in.eta_star, psnr, opts.use_indicator);
  if (v.empty())
    return 0.0;
  double sum = 0;
  for (double x : v)
    sum += x;
  return sum / static_cast<double>(v.size());
}

TileSelection observe(const Pose& pose, const std::vector<TileBox>& boxes,
                      const FrustumSpec& spec) {
  const Frustum f = build_frustum(pose, spec);
  TileSelection sel(static_cast<int>(boxes.size()));
  for (size_t i = 0; i < boxes.size(); ++i) {
    sel.visible[i] = tile_visibility(f, boxes[i]);
    sel.distance[i] = tile_distance(pose, boxes[i]);
  }
  return sel;
}

}  // namespace

void SessionConfig::validate() const {
  acuity.validate();
  if (!(buffer_capacity_s >= ladder.gof_duration()))
    throw InputError("buffer capacity must hold at least one GoF");
  if (!(weights.p >= 0 && weights.q >= 0 && weights.r >= 0))
    throw InputError("QoE weights must be nonnegative");
  if (bandwidth_window == 0 || history_capacity == 0)
    throw InputError("predictor windows must be positive");
  if (num_chunks < 0)
    throw InputError("num_chunks must be nonnegative");
  if (bands) {
    if (bands->upper_bounds.size() != bands->levels.size())
      throw InputError("distance bands: bounds and levels differ in length");
    for (int l : bands->levels) {
      if (l < 0 || l > ladder.top())
        throw InputError("distance bands: level out of ladder range");
    }
  }
  // Constructing the frustum validates FoV and clip distances.
  build_frustum(Pose{}, frustum);
}

DistanceBands SessionConfig::effective_bands() const {
  return bands ? *bands
               : DistanceBands::defaults(ladder, acuity.d0, frustum.far);
}

BandwidthTimeline::BandwidthTimeline(std::vector<BandwidthSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty())
    throw InputError("bandwidth trace is empty");
  if (samples_.size() == 1) {
    end_ = std::numeric_limits<double>::infinity();
  } else {
    const size_t n = samples_.size();
    end_ = samples_[n - 1].t + (samples_[n - 1].t - samples_[n - 2].t);
  }
}

std::optional<double> BandwidthTimeline::finish_time(double start,
                                                     std::int64_t bytes) const {
  double remaining = static_cast<double>(bytes) * 8.0;
  if (remaining <= 0)
    return start;
  double now = std::max(start, samples_.front().t);
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), now,
      [](double t, const BandwidthSample& s) { return t < s.t; });
  size_t k = it == samples_.begin() ? 0 : (it - samples_.begin()) - 1;
  while (now < end_) {
    const double seg_end = k + 1 < samples_.size() ? samples_[k + 1].t : end_;
    const double rate = samples_[k].mbps * 1e6;
    const double capacity = rate * (seg_end - now);
    if (capacity >= remaining)
      return now + remaining / rate;
    remaining -= capacity;
    now = seg_end;
    ++k;
  }
  return std::nullopt;
}

double BandwidthTimeline::mean_mbps(double a, double b) const {
  a = std::max(a, samples_.front().t);
  b = std::min(b, end_);
  if (!(b > a)) {
    auto it = std::upper_bound(
        samples_.begin(), samples_.end(), a,
        [](double t, const BandwidthSample& s) { return t < s.t; });
    return (it == samples_.begin() ? it : it - 1)->mbps;
  }
  double bits = 0;
  for (size_t k = 0; k < samples_.size(); ++k) {
    const double s0 = samples_[k].t;
    const double s1 = k + 1 < samples_.size() ? samples_[k + 1].t : end_;
    const double lo = std::max(a, s0);
    const double hi = std::min(b, s1);
    if (hi > lo)
      bits += samples_[k].mbps * (hi - lo);
  }
  return bits / (b - a);
}

SessionResult run_session(const SessionConfig& cfg,
                          const SessionTraces& traces) {
  cfg.validate();
  traces.validate();

  const QualityLadder& ladder = cfg.ladder;
  const double gof = ladder.gof_duration();
  const std::vector<TileBox> boxes =
      partition(traces.content_bounds, ladder.grid());
  const AcuityModel acuity(cfg.acuity, cfg.density);
  const DistanceBands bands = cfg.effective_bands();
  const BandwidthTimeline timeline(traces.bandwidth);
  const ObjectiveOptions objective = objective_for(cfg.scheme);

  const double t0 = traces.poses.front().t;
  int chunks = cfg.num_chunks;
  if (chunks == 0)
    chunks = static_cast<int>(
        std::floor((traces.poses.back().t - t0) / gof + 1e-9));

  SessionResult result;
  SessionSummary& sum = result.summary;
  sum.scheme = scheme_name(cfg.scheme);

  BandwidthHistory bw_history(cfg.history_capacity);
  PoseHistory pose_history(cfg.history_capacity);
  double clock = timeline.start();
  bw_history.push(clock, traces.bandwidth.front().mbps);
  double buffer = 0.0;
  std::optional<double> prev_decision_q1;
  std::optional<double> prev_q1;

  for (int t = 0; t < chunks; ++t) {
    const double mid = t0 + (t + 0.5) * gof;
    const std::optional<Pose> actual = pose_at(traces.poses, mid);
    if (!actual) {
      sum.truncated = true;
      sum.warnings.push_back("pose trace ends before chunk " +
                             std::to_string(t));
      break;
    }

    Pose predicted;
    double predicted_mbps;
    if (cfg.prediction == PredictionMode::kOracle) {
      predicted = *actual;
      predicted_mbps = timeline.mean_mbps(clock, clock + gof);
    } else {
      // The client reports the pose it rendered at each chunk midpoint; the
      // next chunk's pose is extrapolated one chunk ahead of the newest one.
      if (pose_history.empty())
        pose_history.push(t0, traces.poses.front());
      predicted = predict_pose(pose_history, mid - pose_history.back().t);
      predicted_mbps = predict_bandwidth(bw_history, gof, cfg.bandwidth_window);
    }

    ChunkDecisionInput in;
    in.tiles = observe(predicted, boxes, cfg.frustum);
    const double d_decision = std::max(
        content_distance(predicted, traces.content_center),
        kMinViewingDistance);
    in.eta_star = acuity.eta_star(d_decision);
    in.bandwidth_mbps = predicted_mbps;
    in.buffer_s = buffer;
    in.prev_q1 = prev_decision_q1;
    in.ladder = ladder;
    in.weights = cfg.weights;
    in.psnr = cfg.psnr;

    const TileSelection sel = decide(cfg, bands, in);
    const std::int64_t bytes = transmitted_bytes(sel, ladder);
    VVS_CHECK(bytes <= ladder.full_chunk_size(),
              "selection exceeds the full chunk size");
    for (int i = 0; i < sel.tile_count(); ++i) {
      VVS_CHECK(sel.visible[i] || sel.level[i] == 0,
                "untransmitted tile carries a level");
    }

    const std::optional<double> finish = timeline.finish_time(clock, bytes);
    if (!finish) {
      sum.truncated = true;
      sum.warnings.push_back("bandwidth trace ends during chunk " +
                             std::to_string(t));
      break;
    }
    const double tau = *finish - clock;

    // Playback-side accounting.
    TileSelection played = observe(*actual, boxes, cfg.frustum);
    played.level = sel.level;
    const double d_t = std::max(
        content_distance(*actual, traces.content_center), kMinViewingDistance);
    const AcuityEvaluation ev = acuity.evaluate(d_t);

    ChunkReport rep;
    rep.index = t;
    rep.levels = sel.level;
    rep.transmitted = sel.visible;
    rep.visible = played.visible;
    rep.distance = played.distance;
    rep.bytes = bytes;
    rep.download_start = clock;
    rep.tau = tau;
    rep.buffer_before = buffer;
    rep.predicted_mbps = predicted_mbps;
    rep.realized_mbps =
        tau > 0 ? static_cast<double>(bytes) * 8.0 / tau / 1e6 : 0.0;
    rep.eta_star = ev.boundary.eta;
    rep.eta_star_decision = in.eta_star;
    rep.eta_clamped = ev.boundary.clamped;
    rep.visible_count = played.visible_count();
    rep.d_t = d_t;

    rep.qoe = evaluate_chunk(played, ladder, rep.eta_star, cfg.psnr, tau,
                             buffer, prev_q1, cfg.weights);
    if (t == 0) {
      // The first GoF is the startup delay, not a stall.
      sum.startup_delay = tau;
      rep.qoe.q2 = 0.0;
      rep.qoe.total = qoe_total(rep.qoe, cfg.weights);
    }

    const double drained = std::max(buffer - tau, 0.0) + gof;
    rep.buffer_after = std::min(cfg.buffer_capacity_s, drained);
    rep.idle = std::max(drained - cfg.buffer_capacity_s, 0.0);
    VVS_CHECK(rep.buffer_after >= 0, "negative buffer");

    clock = *finish + rep.idle;
    buffer = rep.buffer_after;
    if (bytes > 0 && tau > 0)
      bw_history.push(*finish, rep.realized_mbps);
    prev_q1 = rep.qoe.q1;
    if (pose_history.empty() || pose_history.back().t < mid)
      pose_history.push(mid, *actual);
    prev_decision_q1 = decision_q1(in, sel, objective);

    sum.total_bytes += bytes;
    sum.no_visible_chunks += rep.qoe.no_visible_tiles ? 1 : 0;
    result.chunks.push_back(std::move(rep));
  }

  sum.chunks = static_cast<int>(result.chunks.size());
  for (const ChunkReport& c : result.chunks) {
    sum.mean_q1 += c.qoe.q1;
    sum.total_q2 += c.qoe.q2;
    sum.mean_q3 += c.qoe.q3;
    sum.mean_q4 += c.qoe.q4;
    sum.total_qoe += c.qoe.total;
  }
  if (sum.chunks > 0) {
    const double n = sum.chunks;
    sum.mean_q1 /= n;
    sum.mean_q3 /= n;
    sum.mean_q4 /= n;
    sum.mean_qoe = sum.total_qoe / n;
  }
  if (sum.no_visible_chunks > 0)
    sum.warnings.push_back(std::to_string(sum.no_visible_chunks) +
                           " chunk(s) had no visible tiles");
  return result;
}

ExperimentResult run_experiment(const SessionConfig& base,
                                const std::vector<Scheme>& schemes,
                                const std::vector<ExperimentCell>& cells,
                                int threads) {
  struct Job {
    size_t cell;
    size_t scheme;
  };
  std::vector<Job> jobs;
  for (size_t c = 0; c < cells.size(); ++c) {
    for (size_t s = 0; s < schemes.size(); ++s)
      jobs.push_back({c, s});
  }
  std::vector<ExperimentRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const ExperimentCell& cell = cells[jobs[k].cell];
        SessionConfig cfg = base;
        cfg.scheme = schemes[jobs[k].scheme];
        SessionResult r = run_session(cfg, cell.traces);
        ExperimentRow& row = rows[k];
        row.scheme = cfg.scheme;
        row.video = cell.video;
        row.bandwidth = cell.bandwidth;
        row.user = cell.user;
        row.summary = std::move(r.summary);
        for (const ChunkReport& c : r.chunks) {
          row.per_chunk.push_back(c.qoe);
          row.per_chunk_bytes.push_back(c.bytes);
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i)
      pool.emplace_back(worker);
    for (auto& th : pool)
      th.join();
  }
  for (const auto& e : errors) {
    if (e)
      std::rethrow_exception(e);
  }

  std::map<std::tuple<std::string, std::string, std::string>, double> best;
  for (const ExperimentRow& r : rows) {
    auto key = std::make_tuple(r.video, r.bandwidth, r.user);
    auto it = best.find(key);
    if (it == best.end() || r.summary.mean_qoe > it->second)
      best[key] = r.summary.mean_qoe;
  }
  for (ExperimentRow& r : rows) {
    const double b = best[std::make_tuple(r.video, r.bandwidth, r.user)];
    r.normalized_qoe = b > 0 ? r.summary.mean_qoe / b : 0.0;
  }

  auto scheme_rank = [&](Scheme s) {
    return std::find(schemes.begin(), schemes.end(), s) - schemes.begin();
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const ExperimentRow& a, const ExperimentRow& b) {
                     return std::make_tuple(a.video, a.bandwidth, a.user,
                                            scheme_rank(a.scheme)) <
                            std::make_tuple(b.video, b.bandwidth, b.user,
                                            scheme_rank(b.scheme));
                   });
  ExperimentResult out;
  out.rows = std::move(rows);
  return out;
}

}  // namespace vvs
