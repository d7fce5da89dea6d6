#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ampack/solver.hpp"

namespace ampack::cli {

/// One benchmark row: bounds, gap, and the per-stage check statistics.
struct RunRecord {
  std::string instance;
  std::string variant;  // "org" or "ts"
  std::uint64_t seed = 0;
  std::string status;  // "optimal", "timelimit" or "error"
  double upper = 0.0;
  double lower = 0.0;
  double gap_pct = 0.0;
  double wall_s = 0.0;
  long long batches_checked = 0;
  long long cuts_lb = 0;
  long long cuts_dff = 0;
  long long cuts_bar = 0;
  long long cuts_op = 0;
  double time_lb_s = 0.0;
  double time_dff_s = 0.0;
  double time_bar_s = 0.0;
  double time_op_s = 0.0;
  double max_op_s = 0.0;
  int hard_packings = 0;
  std::vector<double> hard_eps;  // free-area measures of the hard packings
};

extern const char* const kRunRecordHeader;

RunRecord make_record(const std::string& instance, const std::string& variant,
                      std::uint64_t seed, const SolveResult& result,
                      double wall_s);

std::string to_csv(const RunRecord& record);
RunRecord parse_csv_row(const std::string& line);

struct Aggregate {
  std::string instance;
  int runs = 0;
  double best_upper = 0.0;
  double avg_upper = 0.0;
  double best_lower = 0.0;
  double avg_lower = 0.0;
  double best_gap_pct = 0.0;
  double avg_gap_pct = 0.0;
  int optimal_runs = 0;
};

extern const char* const kAggregateHeader;

/// Groups records by instance name, preserving first-seen order.
std::vector<Aggregate> aggregate_records(std::span<const RunRecord> records);

std::string to_csv(const Aggregate& aggregate);

}  // namespace ampack::cli
