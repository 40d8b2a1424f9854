#include "vvs/acuity.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vvs/errors.h"

namespace vvs {

void AcuityParams::validate() const {
  if (!(d0 > 0))
    throw InputError("acuity: d0 must be positive");
  if (!(v0 > 0))
    throw InputError("acuity: v0 must be positive");
  if (!(ppi_device > 0))
    throw InputError("acuity: ppi_device must be positive");
  if (!(theta_arcmin > 0 && theta_arcmin <= 60))
    throw InputError("acuity: theta_arcmin must lie in (0, 60]");
}

double ppi_initial(const AcuityParams& params) {
  if (!(params.d0 > 0))
    throw InputError("acuity: d0 must be positive");
  const double half_angle =
      0.5 * (params.theta_arcmin / 60.0) * std::numbers::pi / 180.0;
  return 1.0 / (2.0 * params.d0 * std::tan(half_angle));
}

double ppi_at(double d_t, const AcuityParams& params, double ppi0) {
  if (!(d_t > 0))
    throw InputError("acuity: viewing distance must be positive");
  return params.d0 / d_t * ppi0;
}

double effective_ppi(double ppi_t, const AcuityParams& params) {
  return std::min(ppi_t, params.ppi_device);
}

double distinguishable_voxel(double p_t, const AcuityParams& params,
                             double ppi0) {
  if (!(p_t > 0))
    throw InputError("acuity: effective resolution must be positive");
  return ppi0 * params.v0 / p_t;
}

BoundaryPld boundary_pld(double v_t, const DensityModel& h) {
  BoundaryPld out;
  out.eta = density_eta_at(h, v_t, &out.clamped);
  return out;
}

AcuityModel::AcuityModel(AcuityParams params, DensityModel density)
    : params_(params), density_(std::move(density)) {
  params_.validate();
  ppi0_ = ppi_initial(params_);
}

AcuityEvaluation AcuityModel::evaluate(double d_t) const {
  AcuityEvaluation ev;
  ev.ppi_t = ppi_at(d_t, params_, ppi0_);
  ev.p_t = effective_ppi(ev.ppi_t, params_);
  ev.voxel = distinguishable_voxel(ev.p_t, params_, ppi0_);
  ev.boundary = boundary_pld(ev.voxel, density_);
  return ev;
}

}  // namespace vvs
