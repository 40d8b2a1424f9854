#pragma once

#include <optional>
#include <vector>

#include "vvs/core.h"

namespace vvs {

// Rendered quality of a tile as a function of retained density and viewing
// distance, in dB. Either parametric,
//   PSNR(eta, d) = c0 + c1 ln(eta) - c2 ln(d / d0),
// or a tabulated (eta, d) grid interpolated bilinearly in (ln eta, ln d).
// With saturation on, densities above the viewer's boundary density render
// as the boundary density itself.
class PsnrModel {
 public:
  struct Parametric {
    double c0 = 55.0;
    double c1 = 4.0;
    double c2 = 3.0;
    double d0 = 1.0;
  };

  struct Table {
    std::vector<double> etas;       // ascending
    std::vector<double> distances;  // ascending
    // psnr[i * distances.size() + j] at (etas[i], distances[j])
    std::vector<double> psnr;
  };

  static PsnrModel parametric(Parametric p, bool saturate = true);
  // Throws InputError unless the grid is complete, axes ascending and
  // positive, and values nondecreasing in eta and nonincreasing in d.
  static PsnrModel tabulated(Table t, bool saturate = true);

  bool saturating() const { return saturate_; }
  PsnrModel with_saturation(bool on) const;

  // Unsaturated value.
  double raw(double eta, double d) const;
  // Value seen by a viewer whose boundary density is `eta_star`.
  double evaluate(double eta, double d, double eta_star) const;

  bool is_parametric() const { return param_.has_value(); }
  const std::optional<Parametric>& parametric_coefficients() const {
    return param_;
  }
  const std::optional<Table>& table() const { return table_; }

 private:
  PsnrModel() = default;

  std::optional<Parametric> param_;
  std::optional<Table> table_;
  bool saturate_ = true;
};

struct QoEWeights {
  double p = 50.0;  // rebuffering, per second
  double q = 1.0;   // temporal variation
  double r = 1.0;   // spatial variation
};

struct QoEBreakdown {
  double q1 = 0.0;  // perceived quality, dB
  double q2 = 0.0;  // rebuffering, s
  double q3 = 0.0;  // temporal variation, dB
  double q4 = 0.0;  // spatial variation, dB
  double total = 0.0;
  bool no_visible_tiles = false;
};

// 1 when the delivered density reaches the boundary, else the ratio.
double indicator(double eta_level, double eta_star);

// PSNR * indicator for one tile. `use_indicator = false` models schemes that
// are unaware of the acuity boundary.
double tile_quality(double eta_level, double distance, double eta_star,
                    const PsnrModel& psnr, bool use_indicator = true);

// Visible-tile values of PSNR * indicator in tile order.
std::vector<double> visible_tile_qualities(const TileSelection& sel,
                                           const QualityLadder& ladder,
                                           double eta_star,
                                           const PsnrModel& psnr,
                                           bool use_indicator = true);

// Mean of visible tile qualities; 0 when nothing is visible.
double perceived_quality(const TileSelection& sel, const QualityLadder& ladder,
                         double eta_star, const PsnrModel& psnr);

// Seconds to send the visible tiles at `bw_mbps`. Throws InputError for a
// nonpositive bandwidth.
double transmission_time(const TileSelection& sel, const QualityLadder& ladder,
                         double bw_mbps);
double transmission_time_bytes(std::int64_t bytes, double bw_mbps);

double rebuffer_time(double tau, double buffer);
double temporal_variation(double q1_now, double q1_prev);

// Population standard deviation of visible tile qualities; 0 when nothing is
// visible.
double spatial_variation(const TileSelection& sel, const QualityLadder& ladder,
                         double eta_star, const PsnrModel& psnr);

double qoe_total(double q1, double q2, double q3, double q4,
                 const QoEWeights& w);
double qoe_total(const QoEBreakdown& parts, const QoEWeights& w);

// All four factors for one chunk. `q1_prev` empty means first chunk.
QoEBreakdown evaluate_chunk(const TileSelection& sel,
                            const QualityLadder& ladder, double eta_star,
                            const PsnrModel& psnr, double tau, double buffer,
                            std::optional<double> q1_prev,
                            const QoEWeights& w);

}  // namespace vvs
