#include "vvs/qoe.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vvs/errors.h"

namespace vvs {

namespace {

constexpr double kMinDistance = 1e-6;

// Index i such that axis[i] <= x <= axis[i + 1] plus the fraction, after
// clamping x to the axis range. Works in log space.
std::pair<size_t, double> locate(const std::vector<double>& axis, double x) {
  if (axis.size() == 1 || x <= axis.front())
    return {0, 0.0};
  if (x >= axis.back())
    return {axis.size() - 2, 1.0};
  const size_t hi =
      std::upper_bound(axis.begin(), axis.end(), x) - axis.begin();
  const size_t lo = hi - 1;
  const double f = (std::log(x) - std::log(axis[lo])) /
                   (std::log(axis[hi]) - std::log(axis[lo]));
  return {lo, f};
}

}  // namespace

PsnrModel PsnrModel::parametric(Parametric p, bool saturate) {
  if (!(p.c1 >= 0) || !(p.c2 >= 0) || !(p.d0 > 0))
    throw InputError("psnr: need c1 >= 0, c2 >= 0, d0 > 0");
  PsnrModel m;
  m.param_ = p;
  m.saturate_ = saturate;
  return m;
}

PsnrModel PsnrModel::tabulated(Table t, bool saturate) {
  const size_t ne = t.etas.size();
  const size_t nd = t.distances.size();
  if (ne == 0 || nd == 0 || t.psnr.size() != ne * nd)
    throw InputError("psnr table: grid is incomplete");
  for (size_t i = 0; i < ne; ++i) {
    if (!(t.etas[i] > 0) || (i > 0 && !(t.etas[i] > t.etas[i - 1])))
      throw InputError("psnr table: eta axis must be positive and ascending");
  }
  for (size_t j = 0; j < nd; ++j) {
    if (!(t.distances[j] > 0) ||
        (j > 0 && !(t.distances[j] > t.distances[j - 1])))
      throw InputError(
          "psnr table: distance axis must be positive and ascending");
  }
  for (size_t i = 0; i < ne; ++i) {
    for (size_t j = 0; j < nd; ++j) {
      const double v = t.psnr[i * nd + j];
      if (!std::isfinite(v))
        throw InputError("psnr table: non-finite value");
      if (i > 0 && v < t.psnr[(i - 1) * nd + j])
        throw InputError("psnr table: must be nondecreasing in eta");
      if (j > 0 && v > t.psnr[i * nd + j - 1])
        throw InputError("psnr table: must be nonincreasing in distance");
    }
  }
  PsnrModel m;
  m.table_ = std::move(t);
  m.saturate_ = saturate;
  return m;
}

PsnrModel PsnrModel::with_saturation(bool on) const {
  PsnrModel m = *this;
  m.saturate_ = on;
  return m;
}

double PsnrModel::raw(double eta, double d) const {
  d = std::max(d, kMinDistance);
  if (param_) {
    return param_->c0 + param_->c1 * std::log(eta) -
           param_->c2 * std::log(d / param_->d0);
  }
  const Table& t = *table_;
  const size_t nd = t.distances.size();
  const auto [i, fe] = locate(t.etas, eta);
  const auto [j, fd] = locate(t.distances, d);
  const size_t i1 = std::min(i + 1, t.etas.size() - 1);
  const size_t j1 = std::min(j + 1, nd - 1);
  const double a = t.psnr[i * nd + j] * (1 - fd) + t.psnr[i * nd + j1] * fd;
  const double b = t.psnr[i1 * nd + j] * (1 - fd) + t.psnr[i1 * nd + j1] * fd;
  return a * (1 - fe) + b * fe;
}

double PsnrModel::evaluate(double eta, double d, double eta_star) const {
  if (saturate_)
    eta = std::min(eta, eta_star);
  return raw(eta, d);
}

double indicator(double eta_level, double eta_star) {
  if (eta_level >= eta_star)
    return 1.0;
  return eta_level / eta_star;
}

double tile_quality(double eta_level, double distance, double eta_star,
                    const PsnrModel& psnr, bool use_indicator) {
  const double value = psnr.evaluate(eta_level, distance, eta_star);
  return use_indicator ? value * indicator(eta_level, eta_star) : value;
}

std::vector<double> visible_tile_qualities(const TileSelection& sel,
                                           const QualityLadder& ladder,
                                           double eta_star,
                                           const PsnrModel& psnr,
                                           bool use_indicator) {
  std::vector<double> out;
  for (int i = 0; i < sel.tile_count(); ++i) {
    if (!sel.visible[i])
      continue;
    out.push_back(tile_quality(ladder.level(sel.level[i]).eta,
                               sel.distance[i], eta_star, psnr,
                               use_indicator));
  }
  return out;
}

double perceived_quality(const TileSelection& sel, const QualityLadder& ladder,
                         double eta_star, const PsnrModel& psnr) {
  const std::vector<double> v =
      visible_tile_qualities(sel, ladder, eta_star, psnr);
  if (v.empty())
    return 0.0;
  double sum = 0;
  for (double x : v)
    sum += x;
  return sum / static_cast<double>(v.size());
}

double transmission_time_bytes(std::int64_t bytes, double bw_mbps) {
  if (!(bw_mbps > 0))
    throw InputError("bandwidth must be positive");
  return static_cast<double>(bytes) * 8.0 / (bw_mbps * 1e6);
}

double transmission_time(const TileSelection& sel, const QualityLadder& ladder,
                         double bw_mbps) {
  return transmission_time_bytes(transmitted_bytes(sel, ladder), bw_mbps);
}

double rebuffer_time(double tau, double buffer) {
  return std::max(tau - buffer, 0.0);
}

double temporal_variation(double q1_now, double q1_prev) {
  return std::abs(q1_now - q1_prev);
}

double spatial_variation(const TileSelection& sel, const QualityLadder& ladder,
                         double eta_star, const PsnrModel& psnr) {
  const std::vector<double> v =
      visible_tile_qualities(sel, ladder, eta_star, psnr);
  if (v.empty())
    return 0.0;
  double mean = 0;
  for (double x : v)
    mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v)
    ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double qoe_total(double q1, double q2, double q3, double q4,
                 const QoEWeights& w) {
  return q1 - w.p * q2 - w.q * q3 - w.r * q4;
}

double qoe_total(const QoEBreakdown& parts, const QoEWeights& w) {
  return qoe_total(parts.q1, parts.q2, parts.q3, parts.q4, w);
}

QoEBreakdown evaluate_chunk(const TileSelection& sel,
                            const QualityLadder& ladder, double eta_star,
                            const PsnrModel& psnr, double tau, double buffer,
                            std::optional<double> q1_prev,
                            const QoEWeights& w) {
  QoEBreakdown b;
  b.no_visible_tiles = sel.visible_count() == 0;
  b.q1 = perceived_quality(sel, ladder, eta_star, psnr);
  b.q2 = rebuffer_time(tau, buffer);
  b.q3 = q1_prev ? temporal_variation(b.q1, *q1_prev) : 0.0;
  b.q4 = spatial_variation(sel, ladder, eta_star, psnr);
  b.total = qoe_total(b, w);
  return b;
}

}  // namespace vvs
