#pragma once

#include "vvs/density_map.h"

namespace vvs {

// Viewer/device parameters of the acuity model. Resolutions are in pixels per
// meter; only ratios of them reach the boundary density, so the unit choice
// is visible only in reports.
struct AcuityParams {
  double d0 = 1.0;             // default viewing distance, m
  double v0 = 1e-3;            // finest source voxel at d0, m
  double ppi_device = 4000.0;  // display resolution cap, px/m
  double theta_arcmin = 1.0;   // smallest resolvable visual angle

  // Throws InputError on nonpositive fields or theta outside (0, 60].
  void validate() const;
};

// Pixels per meter a viewer can resolve at d0:
//   1 / (2 d0 tan(theta / 2)).
double ppi_initial(const AcuityParams& params);

// Resolvable density at distance d_t, scaled inversely with distance.
double ppi_at(double d_t, const AcuityParams& params, double ppi0);

// Device-capped resolution: min(ppi_t, ppi_device).
double effective_ppi(double ppi_t, const AcuityParams& params);

// Voxel edge the viewer can just tell apart: v_t * P_t = PPI_0 * v0.
double distinguishable_voxel(double p_t, const AcuityParams& params,
                             double ppi0);

struct BoundaryPld {
  double eta = 1.0;
  bool clamped = false;  // voxel size fell outside the density model domain
};

// Smallest density indistinguishable from the source at voxel size v_t.
BoundaryPld boundary_pld(double v_t, const DensityModel& h);

// Full chain distance -> boundary density, with the intermediate values kept
// for reporting.
struct AcuityEvaluation {
  double ppi_t = 0.0;
  double p_t = 0.0;
  double voxel = 0.0;
  BoundaryPld boundary;
};

class AcuityModel {
 public:
  AcuityModel(AcuityParams params, DensityModel density);

  const AcuityParams& params() const { return params_; }
  const DensityModel& density() const { return density_; }
  double ppi0() const { return ppi0_; }

  AcuityEvaluation evaluate(double d_t) const;
  double eta_star(double d_t) const { return evaluate(d_t).boundary.eta; }

 private:
  AcuityParams params_;
  DensityModel density_;
  double ppi0_;
};

}  // namespace vvs
