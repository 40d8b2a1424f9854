#include "vvs/predictor.h"

#include <algorithm>
#include <cmath>

namespace vvs {

double predict_bandwidth(const BandwidthHistory& h, double /*horizon_s*/,
                         size_t window) {
  if (h.empty())
    throw InputError("bandwidth history is empty");
  const size_t k = std::min(std::max<size_t>(window, 1), h.size());
  double inv_sum = 0;
  for (size_t i = h.size() - k; i < h.size(); ++i)
    inv_sum += 1.0 / h[i].value;
  return static_cast<double>(k) / inv_sum;
}

Pose predict_pose(const PoseHistory& h, double horizon_s) {
  if (h.empty())
    throw InputError("pose history is empty");
  const auto& last = h.back();
  Pose out = last.value;
  out.t = last.t + horizon_s;
  if (h.size() < 2 || horizon_s == 0)
    return out;

  const auto& prev = h[h.size() - 2];
  const double dt = last.t - prev.t;
  const double k = horizon_s / dt;
  out.position =
      last.value.position + k * (last.value.position - prev.value.position);

  Quat delta = last.value.orientation * prev.value.orientation.conjugate();
  if (delta.w() < 0)
    delta.coeffs() *= -1;
  Eigen::AngleAxisd aa(delta);
  const Quat step(Eigen::AngleAxisd(aa.angle() * k, aa.axis()));
  out.orientation = (step * last.value.orientation).normalized();
  return out;
}

Pose interpolate(const Pose& a, const Pose& b, double t) {
  Pose out;
  out.t = a.t + t * (b.t - a.t);
  out.position = a.position + t * (b.position - a.position);
  out.orientation = a.orientation.slerp(t, b.orientation).normalized();
  return out;
}

}  // namespace vvs
