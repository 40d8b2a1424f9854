#include "vvs/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vvs/errors.h"

namespace vvs {

namespace {

// Platform-independent uniform draws on top of the standard engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

double reflect(double x, double lo, double hi) {
  for (int i = 0; i < 4 && (x < lo || x > hi); ++i) {
    if (x < lo)
      x = 2 * lo - x;
    if (x > hi)
      x = 2 * hi - x;
  }
  return std::clamp(x, lo, hi);
}

std::pair<double, double> bandwidth_range(BandwidthProfile b) {
  switch (b) {
    case BandwidthProfile::kLow:
      return {40, 160};
    case BandwidthProfile::kMedium:
      return {160, 400};
    case BandwidthProfile::kHigh:
      return {400, 800};
    case BandwidthProfile::kAmple:
      return {10000, 12000};
  }
  return {1, 1};
}

}  // namespace

SessionTraces generate_synthetic_traces(const SyntheticSpec& spec,
                                        std::uint64_t seed) {
  if (!(spec.duration_s > 0) || !(spec.d0 > 0) || !(spec.pose_rate_hz > 0) ||
      !(spec.bandwidth_interval_s > 0))
    throw InputError("synthetic: durations, rates and d0 must be positive");
  Rng rng(seed);
  SessionTraces tr;
  tr.content_bounds = spec.content;
  tr.content_center = spec.content.center();
  const Vec3 c = tr.content_center;

  // Horizontal orbit radius, as a fraction of d0.
  double r_lo = 1.40, r_hi = 2.95;
  if (spec.motion == MotionProfile::kCloseIn) {
    r_lo = 0.55;
    r_hi = 0.90;
  }
  double radius = rng.uniform(r_lo, r_hi) * spec.d0;
  double azimuth = rng.uniform(0, 2 * std::numbers::pi);
  double height = 0.0;
  Vec3 gaze = Vec3::Zero();
  const double sweep_phase = rng.uniform(0, 2 * std::numbers::pi);
  const double sweep_period = rng.uniform(16.0, 24.0);

  const double dt = 1.0 / spec.pose_rate_hz;
  const int steps = static_cast<int>(std::ceil(spec.duration_s / dt));
  // Random-walk velocities, held within bounds.
  double ang_vel = rng.uniform(-0.2, 0.2);
  double rad_vel = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    if (spec.motion == MotionProfile::kCrossing) {
      // 0.6 d0 .. 2.4 d0 and back.
      radius = spec.d0 * (1.5 - 0.9 * std::cos(2 * std::numbers::pi * t /
                                                      sweep_period +
                                                  sweep_phase));
    } else if (k > 0) {
      rad_vel = std::clamp(rad_vel + rng.uniform(-0.05, 0.05), -0.3, 0.3);
      radius = reflect(radius + rad_vel * dt * spec.d0, r_lo * spec.d0,
                       r_hi * spec.d0);
    }
    if (k > 0) {
      ang_vel = std::clamp(ang_vel + rng.uniform(-0.05, 0.05), -0.3, 0.3);
      azimuth += ang_vel * dt;
      height = std::clamp(height + rng.uniform(-0.02, 0.02), -0.15, 0.15);
      for (int a = 0; a < 3; ++a)
        gaze[a] = std::clamp(gaze[a] + rng.uniform(-0.03, 0.03), -0.35, 0.35);
    }
    if (spec.motion == MotionProfile::kCloseIn)
      radius = std::max(radius, 0.55 * spec.d0);
    Pose p;
    p.t = t;
    p.position = c + Vec3(radius * std::cos(azimuth), height,
                          radius * std::sin(azimuth));
    p.orientation = look_at(p.position, c + gaze);
    tr.poses.push_back(p);
  }

  const auto [lo, hi] = bandwidth_range(spec.bandwidth);
  const double bw_span = 3.0 * spec.duration_s + 60.0;
  double log_bw = std::log(rng.uniform(lo, hi));
  for (double t = 0; t <= bw_span; t += spec.bandwidth_interval_s) {
    tr.bandwidth.push_back({t, std::exp(log_bw)});
    log_bw = reflect(log_bw + rng.uniform(-0.15, 0.15), std::log(lo),
                     std::log(hi));
  }
  return tr;
}

const char* motion_name(MotionProfile m) {
  switch (m) {
    case MotionProfile::kFarOrbit:
      return "far-orbit";
    case MotionProfile::kCloseIn:
      return "close-in";
    case MotionProfile::kCrossing:
      return "crossing";
  }
  return "?";
}

const char* bandwidth_name(BandwidthProfile b) {
  switch (b) {
    case BandwidthProfile::kLow:
      return "low";
    case BandwidthProfile::kMedium:
      return "medium";
    case BandwidthProfile::kHigh:
      return "high";
    case BandwidthProfile::kAmple:
      return "ample";
  }
  return "?";
}

MotionProfile parse_motion(const std::string& name) {
  for (MotionProfile m : {MotionProfile::kFarOrbit, MotionProfile::kCloseIn,
                          MotionProfile::kCrossing}) {
    if (name == motion_name(m))
      return m;
  }
  throw InputError("unknown motion profile '" + name + "'");
}

BandwidthProfile parse_bandwidth_profile(const std::string& name) {
  for (BandwidthProfile b : {BandwidthProfile::kLow, BandwidthProfile::kMedium,
                             BandwidthProfile::kHigh, BandwidthProfile::kAmple}) {
    if (name == bandwidth_name(b))
      return b;
  }
  throw InputError("unknown bandwidth profile '" + name + "'");
}

}  // namespace vvs
