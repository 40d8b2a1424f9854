#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace vvs {

// Tabulated mapping from voxel edge length to retained point-level density,
// measured by voxelizing a reference cloud. Entries are sorted by voxel
// size; the first entry is the reference voxel v0 with eta = 1.
class DensityMap {
 public:
  struct Entry {
    double voxel_size;
    double eta;
  };

  // Throws InputError unless the entries are sorted by strictly increasing
  // voxel size, eta is nonincreasing, eta(v0) = 1 and every eta is in (0, 1].
  explicit DensityMap(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  double v0() const { return entries_.front().voxel_size; }
  double max_voxel() const { return entries_.back().voxel_size; }

  // Piecewise-linear interpolation in (log v, log eta). Voxel sizes outside
  // the table are clamped to the nearest endpoint; `clamped` reports it.
  double eta_at(double voxel_size, bool* clamped = nullptr) const;

 private:
  std::vector<Entry> entries_;
};

// H(v) = min(1, (v0 / v)^alpha). alpha = 2 models surface-like clouds.
struct ParametricDensity {
  double v0 = 1e-3;
  double alpha = 2.0;

  double eta_at(double voxel_size, bool* clamped = nullptr) const;
};

using DensityModel = std::variant<ParametricDensity, DensityMap>;

double density_eta_at(const DensityModel& model, double voxel_size,
                      bool* clamped = nullptr);

}  // namespace vvs
