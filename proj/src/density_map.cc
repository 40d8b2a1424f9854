#include "vvs/density_map.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vvs/errors.h"

namespace vvs {

DensityMap::DensityMap(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw InputError("density map is empty");
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (!(e.voxel_size > 0))
      throw InputError("density map row " + std::to_string(i) +
                       ": voxel size must be positive");
    if (!(e.eta > 0 && e.eta <= 1))
      throw InputError("density map row " + std::to_string(i) +
                       ": eta must lie in (0, 1]");
    if (i > 0) {
      if (!(e.voxel_size > entries_[i - 1].voxel_size))
        throw InputError("density map row " + std::to_string(i) +
                         ": voxel sizes must strictly increase");
      if (e.eta > entries_[i - 1].eta)
        throw InputError("density map row " + std::to_string(i) +
                         ": eta must be nonincreasing in voxel size");
    }
  }
  if (entries_.front().eta != 1.0)
    throw InputError("density map must start at eta = 1 for v0");
}

double DensityMap::eta_at(double voxel_size, bool* clamped) const {
  if (clamped)
    *clamped = false;
  if (voxel_size <= entries_.front().voxel_size) {
    if (clamped && voxel_size < entries_.front().voxel_size)
      *clamped = true;
    return entries_.front().eta;
  }
  if (voxel_size >= entries_.back().voxel_size) {
    if (clamped && voxel_size > entries_.back().voxel_size)
      *clamped = true;
    return entries_.back().eta;
  }
  auto hi = std::upper_bound(
      entries_.begin(), entries_.end(), voxel_size,
      [](double v, const Entry& e) { return v < e.voxel_size; });
  auto lo = hi - 1;
  const double x0 = std::log(lo->voxel_size);
  const double x1 = std::log(hi->voxel_size);
  const double y0 = std::log(lo->eta);
  const double y1 = std::log(hi->eta);
  const double f = (std::log(voxel_size) - x0) / (x1 - x0);
  return std::exp(y0 + f * (y1 - y0));
}

double ParametricDensity::eta_at(double voxel_size, bool* clamped) const {
  if (clamped)
    *clamped = false;
  if (voxel_size <= v0)
    return 1.0;
  return std::min(1.0, std::pow(v0 / voxel_size, alpha));
}

double density_eta_at(const DensityModel& model, double voxel_size,
                      bool* clamped) {
  return std::visit(
      [&](const auto& m) { return m.eta_at(voxel_size, clamped); }, model);
}

}  // namespace vvs
