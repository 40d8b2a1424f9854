#include "vvs/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace vvs {
namespace {

namespace fs = std::filesystem;
const std::string kData = VVS_TEST_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vvs_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  const Outcome missing = run_cli({"acuity", "--config", kData + "/none.json"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("none.json"), std::string::npos);
  EXPECT_EQ(run_cli({"run", "--synthetic", "far-orbit", "--scheme", "best",
                     "--out", dir_.string()})
                .code,
            1);
  EXPECT_EQ(run_cli({"run", "--poses", kData + "/poses.csv", "--out",
                     dir_.string()})
                .code,
            1);
}

TEST_F(CliTest, AcuityTableIsMonotone) {
  const Outcome o = run_cli({"acuity", "--d0", "1", "--ppi-device", "4000",
                             "--min", "0.5", "--max", "3", "--step", "0.25"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "d_m,ppi_t,p_t,voxel_m,eta_star,clamped");
  double prev = 2.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<double> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      f.push_back(std::stod(cell));
    ASSERT_EQ(f.size(), 6u);
    EXPECT_LE(f[4], prev);
    EXPECT_LE(f[2], 4000.0 + 1e-9);
    prev = f[4];
    ++rows;
  }
  EXPECT_EQ(rows, 11);
}

TEST_F(CliTest, RunOnTraceFiles) {
  const Outcome o =
      run_cli({"run", "--bandwidth", kData + "/bandwidth.csv", "--poses",
               kData + "/poses.csv", "--scheme", "distance_tile", "--out",
               dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir_ / "summary.json"));
  ASSERT_TRUE(fs::exists(dir_ / "chunks.csv"));
  std::ifstream in(dir_ / "chunks.csv");
  int lines = 0;
  for (std::string l; std::getline(in, l);)
    ++lines;
  EXPECT_EQ(lines, 1 + 12);
}

TEST_F(CliTest, BadTraceReportsLine) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "bw.csv") << "t_s,mbps\n0,10\n0.5,-3\n";
  const Outcome o =
      run_cli({"run", "--bandwidth", (dir_ / "bw.csv").string(), "--poses",
               kData + "/poses.csv", "--out", (dir_ / "out").string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
}

TEST_F(CliTest, CompareWritesTable) {
  const Outcome o = run_cli(
      {"compare", "--synthetic", "far-orbit", "--bandwidth-profile", "medium",
       "--seeds", "2", "--duration", "2", "--scheme", "proposed",
       "distance_tile", "--out", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(dir_ / "comparison.csv");
  int lines = 0;
  for (std::string l; std::getline(in, l);)
    ++lines;
  EXPECT_EQ(lines, 1 + 2 * 2);
}

TEST_F(CliTest, TracesGenThenRun) {
  const fs::path traces = dir_ / "traces";
  ASSERT_EQ(run_cli({"traces", "gen", "--profile", "close-in", "--seed", "4",
                     "--duration", "3", "--out", traces.string()})
                .code,
            0);
  ASSERT_TRUE(fs::exists(traces / "bandwidth.csv"));
  ASSERT_TRUE(fs::exists(traces / "poses.csv"));
  const Outcome o = run_cli({"run", "--bandwidth",
                             (traces / "bandwidth.csv").string(), "--poses",
                             (traces / "poses.csv").string(), "--format",
                             "json", "--out", (dir_ / "run").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir_ / "run" / "chunks.json"));
}

TEST_F(CliTest, LadderFromPointCloud) {
  const Outcome o = run_cli({"ladder", "--cloud", kData + "/cloud.xyz",
                             "--v0", "0.01", "--factors", "1,2,4"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line))
    ++rows;
  EXPECT_EQ(rows, 1 + 3);
  EXPECT_EQ(run_cli({"ladder", "--cloud", kData + "/cloud.xyz", "--v0", "0"})
                .code,
            1);
}

}  // namespace
}  // namespace vvs
