#include "vvs/io.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "vvs/config.h"
#include "vvs/errors.h"
#include "vvs/synthetic.h"

namespace vvs {
namespace {

const std::string kData = VVS_TEST_DATA_DIR;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(TraceIoTest, ParsesFixtures) {
  const auto bw = parse_bandwidth_trace(kData + "/bandwidth.csv");
  const auto poses = parse_pose_trace(kData + "/poses.csv");
  EXPECT_EQ(bw.size(), 145u);
  EXPECT_EQ(poses.size(), 41u);
  EXPECT_DOUBLE_EQ(bw[1].t, 0.5);
  EXPECT_NEAR(poses[0].orientation.norm(), 1.0, 1e-12);
}

TEST(TraceIoTest, ErrorsCarryLineNumbers) {
  std::istringstream bad_value("t_s,mbps\n0,10\n0.5,abc\n");
  EXPECT_NE(error_of([&] { parse_bandwidth_trace(bad_value); })
                .find("line 3"),
            std::string::npos);
  std::istringstream backwards("t_s,mbps\n0,10\n1,10\n0.5,10\n");
  EXPECT_NE(error_of([&] { parse_bandwidth_trace(backwards); }).find("line 4"),
            std::string::npos);
  std::istringstream nonpositive("t_s,mbps\n0,0\n");
  EXPECT_NE(error_of([&] { parse_bandwidth_trace(nonpositive); })
                .find("line 2"),
            std::string::npos);
  std::istringstream short_row("t_s,x,y,z,qw,qx,qy,qz\n0,1,2,3,1,0,0\n");
  EXPECT_NE(error_of([&] { parse_pose_trace(short_row); }).find("line 2"),
            std::string::npos);
  std::istringstream header("time,mbps\n0,10\n");
  EXPECT_NE(error_of([&] { parse_bandwidth_trace(header); }).find("line 1"),
            std::string::npos);
  EXPECT_THROW(parse_bandwidth_trace(kData + "/missing.csv"), InputError);
}

TEST(TraceIoTest, QuaternionNormTolerance) {
  std::istringstream ok("t_s,x,y,z,qw,qx,qy,qz\n0,0,0,0,1.0005,0,0,0\n");
  const auto poses = parse_pose_trace(ok);
  EXPECT_NEAR(poses[0].orientation.norm(), 1.0, 1e-15);
  std::istringstream bad("t_s,x,y,z,qw,qx,qy,qz\n0,0,0,0,0.9,0,0,0\n");
  EXPECT_NE(error_of([&] { parse_pose_trace(bad); }).find("line 2"),
            std::string::npos);
}

TEST(TraceIoTest, RoundTrip) {
  const SessionTraces tr = generate_synthetic_traces(SyntheticSpec{}, 12);
  std::stringstream bw, ps;
  write_bandwidth_trace(bw, tr.bandwidth);
  write_pose_trace(ps, tr.poses);
  const auto bw2 = parse_bandwidth_trace(bw);
  const auto ps2 = parse_pose_trace(ps);
  ASSERT_EQ(bw2.size(), tr.bandwidth.size());
  ASSERT_EQ(ps2.size(), tr.poses.size());
  for (size_t i = 0; i < bw2.size(); ++i)
    EXPECT_NEAR(bw2[i].mbps, tr.bandwidth[i].mbps, 1e-6 * bw2[i].mbps);
  for (size_t i = 0; i < ps2.size(); ++i) {
    EXPECT_TRUE(ps2[i].position.isApprox(tr.poses[i].position, 1e-8));
    EXPECT_LT(ps2[i].orientation.angularDistance(tr.poses[i].orientation),
              1e-7);
  }
}

TEST(TraceIoTest, PoseInterpolation) {
  std::vector<Pose> poses(2);
  poses[1].t = 1.0;
  poses[1].position = Vec3(2, 0, 0);
  EXPECT_TRUE(pose_at(poses, 0.25)->position.isApprox(Vec3(0.5, 0, 0)));
  EXPECT_FALSE(pose_at(poses, 1.5).has_value());
  EXPECT_FALSE(pose_at(poses, -0.1).has_value());
}

TEST(TraceIoTest, ValidateRejectsBadTraces) {
  SessionTraces tr = generate_synthetic_traces(SyntheticSpec{}, 1);
  EXPECT_NO_THROW(tr.validate());
  SessionTraces bad = tr;
  bad.bandwidth.clear();
  EXPECT_THROW(bad.validate(), InputError);
  bad = tr;
  bad.poses[3].t = bad.poses[2].t;
  EXPECT_THROW(bad.validate(), InputError);
  bad = tr;
  bad.bandwidth[0].mbps = -1;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(TableIoTest, PointCloudAndTables) {
  const PointCloud c = read_xyz(kData + "/cloud.xyz");
  EXPECT_EQ(c.size(), 4u);
  const DensityMap m = read_density_map(kData + "/density.csv");
  EXPECT_EQ(m.entries().size(), 4u);
  EXPECT_DOUBLE_EQ(m.eta_at(0.002), 0.27);
  std::stringstream s;
  write_density_map(s, m);
  EXPECT_EQ(read_density_map(s).entries().size(), 4u);
  const PsnrModel p = read_psnr_table(kData + "/psnr.csv");
  EXPECT_DOUBLE_EQ(p.raw(1.0, 1.0), 55.4);
  std::istringstream holes("eta,d,psnr_db\n0.1,1,40\n1,1,50\n0.1,2,38\n");
  EXPECT_THROW(read_psnr_table(holes), InputError);
  std::istringstream rising("voxel_size,eta\n0.001,1\n0.002,0.5\n0.004,0.6\n");
  EXPECT_THROW(read_density_map(rising), InputError);
}

TEST(SyntheticTest, Deterministic) {
  SyntheticSpec spec;
  spec.motion = MotionProfile::kCrossing;
  const SessionTraces a = generate_synthetic_traces(spec, 42);
  const SessionTraces b = generate_synthetic_traces(spec, 42);
  const SessionTraces c = generate_synthetic_traces(spec, 43);
  std::stringstream sa, sb, sc;
  write_pose_trace(sa, a.poses);
  write_bandwidth_trace(sa, a.bandwidth);
  write_pose_trace(sb, b.poses);
  write_bandwidth_trace(sb, b.bandwidth);
  write_pose_trace(sc, c.poses);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str(), sc.str());
}

TEST(SyntheticTest, ProfilesStayInTheirRanges) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (MotionProfile m : {MotionProfile::kFarOrbit, MotionProfile::kCloseIn,
                            MotionProfile::kCrossing}) {
      SyntheticSpec spec;
      spec.motion = m;
      spec.bandwidth = BandwidthProfile::kLow;
      const SessionTraces tr = generate_synthetic_traces(spec, seed);
      EXPECT_NO_THROW(tr.validate());
      EXPECT_GE(tr.bandwidth.back().t, 3 * spec.duration_s);
      for (const BandwidthSample& b : tr.bandwidth) {
        EXPECT_GE(b.mbps, 40 - 1e-9);
        EXPECT_LE(b.mbps, 160 + 1e-9);
      }
      for (size_t i = 0; i < tr.poses.size(); ++i) {
        const double d = (tr.poses[i].position - tr.content_center).norm();
        if (m == MotionProfile::kFarOrbit) {
          EXPECT_GE(d, 1.35);
          EXPECT_LE(d, 3.0);
        } else if (m == MotionProfile::kCloseIn) {
          EXPECT_LT(d, 1.0);
        }
        if (i > 0) {
          const double speed =
              (tr.poses[i].position - tr.poses[i - 1].position).norm() /
              (tr.poses[i].t - tr.poses[i - 1].t);
          EXPECT_LT(speed, 1.5);
        }
      }
    }
  }
}

TEST(SyntheticTest, Names) {
  EXPECT_EQ(parse_motion("close-in"), MotionProfile::kCloseIn);
  EXPECT_EQ(parse_bandwidth_profile("ample"), BandwidthProfile::kAmple);
  EXPECT_THROW(parse_motion("sideways"), InputError);
  EXPECT_THROW(parse_bandwidth_profile("huge"), InputError);
}

TEST(ConfigTest, DefaultConfigMatchesBuiltInDefaults) {
  const ExperimentConfig c =
      load_config(std::string(VVS_TEST_DATA_DIR) + "/../../configs/default.json");
  const ExperimentConfig d;
  EXPECT_EQ(c.session.ladder.full_chunk_size(),
            d.session.ladder.full_chunk_size());
  EXPECT_EQ(c.session.weights.p, 50);
  EXPECT_NEAR(c.session.buffer_capacity_s, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(c.session.scheme, Scheme::kProposed);
  EXPECT_TRUE(c.content_center.isApprox(Vec3(0, 0.9, 0)));
}

TEST(ConfigTest, ResolvesTablesAndRejectsUnknownKeys) {
  const ExperimentConfig c = parse_config(
      R"({"density": {"type": "table", "path": "density.csv"},
          "psnr": {"type": "table", "path": "psnr.csv", "saturate": false},
          "scheme": "distance_tile", "prediction": "oracle"})",
      kData);
  EXPECT_TRUE(std::holds_alternative<DensityMap>(c.session.density));
  EXPECT_FALSE(c.session.psnr.saturating());
  EXPECT_EQ(c.session.scheme, Scheme::kDistanceTile);
  EXPECT_EQ(c.session.prediction, PredictionMode::kOracle);
  EXPECT_THROW(parse_config(R"({"weigths": {}})"), InputError);
  EXPECT_THROW(parse_config(R"({"weights": {"s": 1}})"), InputError);
  EXPECT_THROW(parse_config(R"({"scheme": "best"})"), InputError);
  EXPECT_THROW(parse_config("{not json"), InputError);
  EXPECT_THROW(parse_config(R"({"acuity": {"d0": -1}})"), InputError);
  EXPECT_THROW(load_config(kData + "/nope.json"), InputError);
}

}  // namespace
}  // namespace vvs
