#pragma once

#include <deque>
#include <string>

#include "vvs/errors.h"
#include "vvs/geometry.h"

namespace vvs {

// Bounded window of recent timestamped samples, oldest first.
template <typename T>
class History {
 public:
  struct Sample {
    double t;
    T value;
  };

  explicit History(size_t capacity = 10) : capacity_(capacity) {
    if (capacity_ == 0)
      throw InputError("history capacity must be positive");
  }

  // Throws InputError unless t is strictly after the newest sample.
  void push(double t, T value) {
    if (!samples_.empty() && !(t > samples_.back().t))
      throw InputError("history timestamps must strictly increase");
    samples_.push_back({t, std::move(value)});
    if (samples_.size() > capacity_)
      samples_.pop_front();
  }

  bool empty() const { return samples_.empty(); }
  size_t size() const { return samples_.size(); }
  size_t capacity() const { return capacity_; }
  const Sample& back() const { return samples_.back(); }
  const Sample& operator[](size_t i) const { return samples_[i]; }

 private:
  size_t capacity_;
  std::deque<Sample> samples_;
};

using BandwidthHistory = History<double>;
using PoseHistory = History<Pose>;

// Harmonic mean of the newest `window` samples. Throws InputError on an empty
// history.
double predict_bandwidth(const BandwidthHistory& h, double horizon_s,
                         size_t window = 5);

// Constant-velocity extrapolation of the newest two samples: linear for the
// position, constant angular rate for the orientation. With fewer than two
// samples the newest pose is returned. The returned pose is stamped
// back().t + horizon_s.
Pose predict_pose(const PoseHistory& h, double horizon_s);

// Interpolates between two poses (lerp position, slerp orientation).
Pose interpolate(const Pose& a, const Pose& b, double t);

}  // namespace vvs
