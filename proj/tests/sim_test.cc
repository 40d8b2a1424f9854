#include "vvs/sim.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "vvs/report.h"
#include "vvs/synthetic.h"

namespace vvs {
namespace {

SessionTraces static_viewer(double distance, double mbps, double duration) {
  SessionTraces tr;
  const Vec3 eye(0, 0, distance);
  const Quat q = look_at(eye, Vec3::Zero());
  for (int i = 0; i <= static_cast<int>(duration * 10); ++i)
    tr.poses.push_back(Pose{i * 0.1, eye, q});
  for (int i = 0; i <= static_cast<int>(duration * 4) + 40; ++i)
    tr.bandwidth.push_back(BandwidthSample{i * 0.25, mbps});
  return tr;
}

TEST(BandwidthTimelineTest, FinishTimeAndMean) {
  BandwidthTimeline tl({{0.0, 8.0}, {1.0, 16.0}, {2.0, 8.0}});
  EXPECT_DOUBLE_EQ(tl.end(), 3.0);
  // 1e6 bytes at 8 Mbps take 1 s.
  EXPECT_NEAR(*tl.finish_time(0.0, 1000000), 1.0, 1e-12);
  // 0.5 s at 8 then 0.5 s at 16 moves 1.5e6 bytes.
  EXPECT_NEAR(*tl.finish_time(0.5, 1500000), 1.5, 1e-12);
  EXPECT_FALSE(tl.finish_time(2.5, 10000000).has_value());
  EXPECT_NEAR(tl.mean_mbps(0.5, 1.5), 12.0, 1e-12);
  EXPECT_NEAR(*tl.finish_time(1.0, 0), 1.0, 1e-12);
  BandwidthTimeline single({{0.0, 8.0}});
  EXPECT_NEAR(*single.finish_time(100.0, 1000000), 101.0, 1e-12);
}

TEST(SessionTest, StaticViewerWithAmpleBandwidthSettles) {
  SessionConfig cfg;
  const SessionResult r = run_session(cfg, static_viewer(1.0, 1e5, 5.0));
  ASSERT_EQ(r.summary.chunks, 15);
  EXPECT_FALSE(r.summary.truncated);
  for (const ChunkReport& c : r.chunks) {
    EXPECT_DOUBLE_EQ(c.qoe.q2, 0.0);
    EXPECT_NEAR(c.d_t, 1.0, 1e-12);
    EXPECT_GT(c.visible_count, 0);
    if (c.index * cfg.ladder.gof_duration() >= 1.0) {
      EXPECT_DOUBLE_EQ(c.qoe.q3, 0.0);
    }
  }
}

TEST(SessionTest, Deterministic) {
  SyntheticSpec spec;
  spec.duration_s = 4;
  const SessionTraces tr = generate_synthetic_traces(spec, 9);
  for (Scheme s : {Scheme::kProposed, Scheme::kRateUtility,
                   Scheme::kViewportUtility, Scheme::kDistanceTile}) {
    SessionConfig cfg;
    cfg.scheme = s;
    std::ostringstream a, b;
    write_chunks_csv(a, run_session(cfg, tr));
    write_chunks_csv(b, run_session(cfg, tr));
    EXPECT_EQ(a.str(), b.str()) << scheme_name(s);
  }
}

TEST(SessionTest, ShortBandwidthTraceTruncatesWithWarning) {
  SessionTraces tr = static_viewer(1.0, 20.0, 5.0);
  tr.bandwidth.resize(3);
  const SessionResult r = run_session(SessionConfig{}, tr);
  EXPECT_TRUE(r.summary.truncated);
  EXPECT_LT(r.summary.chunks, 15);
  ASSERT_FALSE(r.summary.warnings.empty());
  EXPECT_NE(r.summary.warnings[0].find("bandwidth trace ends"),
            std::string::npos);
}

TEST(SessionTest, BufferStaysWithinCapacity) {
  SyntheticSpec spec;
  spec.duration_s = 6;
  spec.bandwidth = BandwidthProfile::kLow;
  spec.motion = MotionProfile::kCrossing;
  const SessionTraces tr = generate_synthetic_traces(spec, 4);
  SessionConfig cfg;
  const SessionResult r = run_session(cfg, tr);
  for (const ChunkReport& c : r.chunks) {
    EXPECT_GE(c.buffer_after, 0.0);
    EXPECT_LE(c.buffer_after, cfg.buffer_capacity_s + 1e-12);
    EXPECT_LE(c.bytes, cfg.ladder.full_chunk_size());
  }
}

TEST(SessionTest, StarvedLinkStallsEveryChunk) {
  // A tenth of the full-chunk rate cannot carry every visible tile even at
  // the lowest level, so both schemes floor at level 0.
  const double full_rate = 651.0;
  const SessionTraces tr = static_viewer(3.5, 0.1 * full_rate, 4.0);
  SessionConfig cfg;
  const SessionResult proposed = run_session(cfg, tr);
  cfg.scheme = Scheme::kViewportUtility;
  const SessionResult viewport = run_session(cfg, tr);
  for (const SessionResult* r : {&proposed, &viewport}) {
    for (size_t i = 1; i < r->chunks.size(); ++i)
      EXPECT_GT(r->chunks[i].qoe.q2, 0.0);
  }
  EXPECT_LE(proposed.summary.total_bytes, viewport.summary.total_bytes);
}

TEST(SessionTest, FarViewerSendsLessThanViewportScheme) {
  for (double d : {2.0, 2.5, 3.0}) {
    const SessionTraces tr = static_viewer(d, 0.5 * 651.0, 4.0);
    SessionConfig cfg;
    const SessionResult proposed = run_session(cfg, tr);
    cfg.scheme = Scheme::kViewportUtility;
    const SessionResult viewport = run_session(cfg, tr);
    EXPECT_LT(proposed.summary.total_bytes, viewport.summary.total_bytes)
        << "d=" << d;
    EXPECT_GT(proposed.summary.mean_qoe, viewport.summary.mean_qoe)
        << "d=" << d;
  }
}

TEST(ExperimentTest, RowsAndNormalization) {
  SyntheticSpec spec;
  spec.duration_s = 2;
  ExperimentCell cell{"v", "medium", "far", generate_synthetic_traces(spec, 2)};
  const std::vector<Scheme> schemes = {Scheme::kProposed,
                                       Scheme::kDistanceTile};
  const ExperimentResult one = run_experiment(SessionConfig{}, {schemes[0]},
                                              {cell});
  ASSERT_EQ(one.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(one.rows[0].normalized_qoe, 1.0);

  ExperimentCell cell2 = cell;
  cell2.user = "another";
  const ExperimentResult serial =
      run_experiment(SessionConfig{}, schemes, {cell2, cell}, 1);
  const ExperimentResult parallel =
      run_experiment(SessionConfig{}, schemes, {cell2, cell}, 3);
  ASSERT_EQ(serial.rows.size(), 4u);
  EXPECT_EQ(serial.rows[0].user, "another");
  std::ostringstream a, b;
  write_comparison_csv(a, serial);
  write_comparison_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
  for (const ExperimentRow& row : serial.rows)
    EXPECT_LE(row.normalized_qoe, 1.0 + 1e-12);
}

TEST(ReportTest, WritesSessionAndExperimentFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "vvs_report_test";
  std::filesystem::remove_all(dir);
  SyntheticSpec spec;
  spec.duration_s = 2;
  const SessionTraces tr = generate_synthetic_traces(spec, 5);
  const SessionResult r = run_session(SessionConfig{}, tr);
  write_session_reports((dir / "csv").string(), r, "csv");
  write_session_reports((dir / "json").string(), r, "json");
  EXPECT_TRUE(std::filesystem::exists(dir / "csv" / "summary.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "csv" / "chunks.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "json" / "chunks.json"));

  std::ostringstream csv;
  write_chunks_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("chunk,bytes,tau_s", 0), 0u);

  ExperimentCell cell{"v", "medium", "far", tr};
  write_experiment_reports(
      (dir / "cmp").string(),
      run_experiment(SessionConfig{}, {Scheme::kProposed}, {cell}), "csv");
  EXPECT_TRUE(std::filesystem::exists(dir / "cmp" / "comparison.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace vvs
