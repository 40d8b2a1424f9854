#pragma once

#include <iosfwd>
#include <string>

#include "vvs/sim.h"

namespace vvs {

// chunks.csv columns:
//   chunk,bytes,tau_s,buffer_before_s,buffer_after_s,predicted_mbps,
//   realized_mbps,eta_star,eta_star_decision,visible_tiles,d_t,q1,q2,q3,q4,
//   qoe,levels
// `levels` is the per-tile level vector joined with ';'.
void write_chunks_csv(std::ostream& out, const SessionResult& r);
void write_summary_json(std::ostream& out, const SessionSummary& s);

// comparison.csv: one row per (video, bandwidth, user, scheme) summary.
// chunk_metrics.csv: per-chunk factors for CDF plots.
void write_comparison_csv(std::ostream& out, const ExperimentResult& r);
void write_chunk_metrics_csv(std::ostream& out, const ExperimentResult& r);
void write_comparison_json(std::ostream& out, const ExperimentResult& r);

// Writes summary.json plus chunks.csv or chunks.json into `dir`, creating
// it.
void write_session_reports(const std::string& dir, const SessionResult& r,
                           const std::string& format);
void write_experiment_reports(const std::string& dir,
                              const ExperimentResult& r,
                              const std::string& format);

}  // namespace vvs
