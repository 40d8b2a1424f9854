#include "vvs/report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "vvs/errors.h"

namespace vvs {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

ordered_json summary_json(const SessionSummary& s) {
  ordered_json j;
  j["scheme"] = s.scheme;
  j["chunks"] = s.chunks;
  j["mean_q1"] = s.mean_q1;
  j["total_q2"] = s.total_q2;
  j["mean_q3"] = s.mean_q3;
  j["mean_q4"] = s.mean_q4;
  j["total_qoe"] = s.total_qoe;
  j["mean_qoe"] = s.mean_qoe;
  j["total_bytes"] = s.total_bytes;
  j["startup_delay_s"] = s.startup_delay;
  j["no_visible_chunks"] = s.no_visible_chunks;
  j["truncated"] = s.truncated;
  j["warnings"] = s.warnings;
  return j;
}

ordered_json chunk_json(const ChunkReport& c) {
  ordered_json j;
  j["chunk"] = c.index;
  j["bytes"] = c.bytes;
  j["tau_s"] = c.tau;
  j["buffer_before_s"] = c.buffer_before;
  j["buffer_after_s"] = c.buffer_after;
  j["predicted_mbps"] = c.predicted_mbps;
  j["realized_mbps"] = c.realized_mbps;
  j["eta_star"] = c.eta_star;
  j["eta_star_decision"] = c.eta_star_decision;
  j["visible_tiles"] = c.visible_count;
  j["d_t"] = c.d_t;
  j["q1"] = c.qoe.q1;
  j["q2"] = c.qoe.q2;
  j["q3"] = c.qoe.q3;
  j["q4"] = c.qoe.q4;
  j["qoe"] = c.qoe.total;
  j["levels"] = c.levels;
  return j;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out)
    throw InputError("cannot write '" + p.string() + "'");
  return out;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json")
    throw InputError("format must be csv or json");
}

}  // namespace

void write_chunks_csv(std::ostream& out, const SessionResult& r) {
  out << "chunk,bytes,tau_s,buffer_before_s,buffer_after_s,predicted_mbps,"
         "realized_mbps,eta_star,eta_star_decision,visible_tiles,d_t,q1,q2,"
         "q3,q4,qoe,levels\n";
  for (const ChunkReport& c : r.chunks) {
    out << c.index << ',' << c.bytes << ',' << num(c.tau) << ','
        << num(c.buffer_before) << ',' << num(c.buffer_after) << ','
        << num(c.predicted_mbps) << ',' << num(c.realized_mbps) << ','
        << num(c.eta_star) << ',' << num(c.eta_star_decision) << ','
        << c.visible_count << ',' << num(c.d_t) << ',' << num(c.qoe.q1)
        << ',' << num(c.qoe.q2) << ',' << num(c.qoe.q3) << ','
        << num(c.qoe.q4) << ',' << num(c.qoe.total) << ',';
    for (size_t i = 0; i < c.levels.size(); ++i)
      out << (i ? ";" : "") << c.levels[i];
    out << '\n';
  }
}

void write_summary_json(std::ostream& out, const SessionSummary& s) {
  out << summary_json(s).dump(2) << '\n';
}

void write_comparison_csv(std::ostream& out, const ExperimentResult& r) {
  out << "video,bandwidth,user,scheme,chunks,mean_q1,total_q2,mean_q3,"
         "mean_q4,total_qoe,mean_qoe,normalized_qoe,total_bytes,"
         "startup_delay_s,truncated\n";
  for (const ExperimentRow& row : r.rows) {
    const SessionSummary& s = row.summary;
    out << row.video << ',' << row.bandwidth << ',' << row.user << ','
        << scheme_name(row.scheme) << ',' << s.chunks << ','
        << num(s.mean_q1) << ',' << num(s.total_q2) << ','
        << num(s.mean_q3) << ',' << num(s.mean_q4) << ','
        << num(s.total_qoe) << ',' << num(s.mean_qoe) << ','
        << num(row.normalized_qoe) << ',' << s.total_bytes << ','
        << num(s.startup_delay) << ',' << (s.truncated ? 1 : 0) << '\n';
  }
}

void write_chunk_metrics_csv(std::ostream& out, const ExperimentResult& r) {
  out << "video,bandwidth,user,scheme,chunk,q1,q2,q3,q4,qoe,bytes\n";
  for (const ExperimentRow& row : r.rows) {
    for (size_t k = 0; k < row.per_chunk.size(); ++k) {
      const QoEBreakdown& q = row.per_chunk[k];
      out << row.video << ',' << row.bandwidth << ',' << row.user << ','
          << scheme_name(row.scheme) << ',' << k << ',' << num(q.q1) << ','
          << num(q.q2) << ',' << num(q.q3) << ',' << num(q.q4) << ','
          << num(q.total) << ',' << row.per_chunk_bytes[k] << '\n';
    }
  }
}

void write_comparison_json(std::ostream& out, const ExperimentResult& r) {
  ordered_json rows = ordered_json::array();
  for (const ExperimentRow& row : r.rows) {
    ordered_json j;
    j["video"] = row.video;
    j["bandwidth"] = row.bandwidth;
    j["user"] = row.user;
    j["scheme"] = scheme_name(row.scheme);
    j["normalized_qoe"] = row.normalized_qoe;
    j["summary"] = summary_json(row.summary);
    rows.push_back(std::move(j));
  }
  out << rows.dump(2) << '\n';
}

void write_session_reports(const std::string& dir, const SessionResult& r,
                           const std::string& format) {
  check_format(format);
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  if (format == "csv") {
    auto chunks = open_out(base / "chunks.csv");
    write_chunks_csv(chunks, r);
  } else {
    ordered_json j = ordered_json::array();
    for (const ChunkReport& c : r.chunks)
      j.push_back(chunk_json(c));
    auto chunks = open_out(base / "chunks.json");
    chunks << j.dump(2) << '\n';
  }
  auto summary = open_out(base / "summary.json");
  write_summary_json(summary, r.summary);
}

void write_experiment_reports(const std::string& dir,
                              const ExperimentResult& r,
                              const std::string& format) {
  check_format(format);
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  if (format == "csv") {
    auto cmp = open_out(base / "comparison.csv");
    write_comparison_csv(cmp, r);
  } else {
    auto cmp = open_out(base / "comparison.json");
    write_comparison_json(cmp, r);
  }
  auto metrics = open_out(base / "chunk_metrics.csv");
  write_chunk_metrics_csv(metrics, r);
}

}  // namespace vvs
