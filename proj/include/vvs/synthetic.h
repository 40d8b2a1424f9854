#pragma once

#include <cstdint>
#include <string>

#include "vvs/io.h"

namespace vvs {

enum class MotionProfile {
  kFarOrbit,  // viewing distance in [1.35, 3] * d0
  kCloseIn,   // viewing distance below d0
  kCrossing,  // sweeps from inside d0 to well beyond it and back
};

enum class BandwidthProfile {
  kLow,     // 40-160 Mbps
  kMedium,  // 160-400 Mbps
  kHigh,    // 400-800 Mbps
  kAmple,   // 10-12 Gbps, never the bottleneck
};

struct SyntheticSpec {
  MotionProfile motion = MotionProfile::kFarOrbit;
  BandwidthProfile bandwidth = BandwidthProfile::kMedium;
  double duration_s = 30.0;
  double d0 = 1.0;
  double pose_rate_hz = 10.0;
  double bandwidth_interval_s = 0.5;
  // A standing human-sized subject.
  TileBox content{Vec3(-0.4, 0.0, -0.3), Vec3(0.4, 1.8, 0.3)};
};

// Deterministic for a given spec and seed. The bandwidth series is a bounded
// log-space random walk and runs well past the pose series so stalls do not
// truncate sessions; pose speed stays below 1.5 m/s.
SessionTraces generate_synthetic_traces(const SyntheticSpec& spec,
                                        std::uint64_t seed);

const char* motion_name(MotionProfile m);
const char* bandwidth_name(BandwidthProfile b);
// Throw InputError for unknown names.
MotionProfile parse_motion(const std::string& name);
BandwidthProfile parse_bandwidth_profile(const std::string& name);

}  // namespace vvs
