#include "run_record.hpp"

#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ampack::cli {

const char* const kRunRecordHeader =
    "instance,variant,seed,status,upper,lower,gap_pct,wall_s,"
    "batches_checked,cuts_lb,cuts_dff,cuts_bar,cuts_op,"
    "time_lb_s,time_dff_s,time_bar_s,time_op_s,max_op_s,"
    "hard_packings,hard_eps";

const char* const kAggregateHeader =
    "instance,runs,best_upper,avg_upper,best_lower,avg_lower,"
    "best_gap_pct,avg_gap_pct,optimal_runs";

namespace {

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

RunRecord make_record(const std::string& instance, const std::string& variant,
                      std::uint64_t seed, const SolveResult& result,
                      double wall_s) {
  RunRecord record;
  record.instance = instance;
  record.variant = variant;
  record.seed = seed;
  record.status = result.status == SolveResult::Status::Optimal ? "optimal"
                                                                : "timelimit";
  record.upper = result.upper;
  record.lower = result.lower;
  record.gap_pct = 100.0 * result.gap();
  record.wall_s = wall_s;
  record.batches_checked = result.stats.batches_checked;
  record.cuts_lb = result.stats.cuts.lower_bound;
  record.cuts_dff = result.stats.cuts.dff;
  record.cuts_bar = result.stats.cuts.bar;
  record.cuts_op = result.stats.cuts.exact;
  record.time_lb_s = result.stats.stage_seconds[0];
  record.time_dff_s = result.stats.stage_seconds[1];
  record.time_bar_s = result.stats.stage_seconds[2];
  record.time_op_s = result.stats.stage_seconds[3];
  record.max_op_s = result.stats.max_exact_seconds;
  record.hard_packings = result.stats.hard_packings;
  record.hard_eps = result.stats.hard_packing_eps;
  return record;
}

std::string to_csv(const RunRecord& r) {
  std::ostringstream out;
  out << r.instance << ',' << r.variant << ',' << r.seed << ',' << r.status
      << ',' << fmt(r.upper) << ',' << fmt(r.lower) << ',' << fmt(r.gap_pct)
      << ',' << fmt(r.wall_s) << ',' << r.batches_checked << ',' << r.cuts_lb
      << ',' << r.cuts_dff << ',' << r.cuts_bar << ',' << r.cuts_op << ','
      << fmt(r.time_lb_s) << ',' << fmt(r.time_dff_s) << ','
      << fmt(r.time_bar_s) << ',' << fmt(r.time_op_s) << ','
      << fmt(r.max_op_s) << ',' << r.hard_packings << ',';
  for (std::size_t i = 0; i < r.hard_eps.size(); ++i) {
    if (i > 0) out << ';';
    out << fmt(r.hard_eps[i]);
  }
  return out.str();
}

RunRecord parse_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (line.size() > 0 && line.back() == ',') fields.push_back("");
  if (fields.size() != 20) {
    throw std::runtime_error("bad record row: " + line);
  }
  RunRecord r;
  r.instance = fields[0];
  r.variant = fields[1];
  r.seed = std::stoull(fields[2]);
  r.status = fields[3];
  r.upper = std::stod(fields[4]);
  r.lower = std::stod(fields[5]);
  r.gap_pct = std::stod(fields[6]);
  r.wall_s = std::stod(fields[7]);
  r.batches_checked = std::stoll(fields[8]);
  r.cuts_lb = std::stoll(fields[9]);
  r.cuts_dff = std::stoll(fields[10]);
  r.cuts_bar = std::stoll(fields[11]);
  r.cuts_op = std::stoll(fields[12]);
  r.time_lb_s = std::stod(fields[13]);
  r.time_dff_s = std::stod(fields[14]);
  r.time_bar_s = std::stod(fields[15]);
  r.time_op_s = std::stod(fields[16]);
  r.max_op_s = std::stod(fields[17]);
  r.hard_packings = std::stoi(fields[18]);
  if (!fields[19].empty()) {
    std::istringstream eps(fields[19]);
    std::string value;
    while (std::getline(eps, value, ';')) {
      r.hard_eps.push_back(std::stod(value));
    }
  }
  return r;
}

std::vector<Aggregate> aggregate_records(std::span<const RunRecord> records) {
  std::vector<Aggregate> aggregates;
  auto find = [&](const std::string& instance) -> Aggregate& {
    for (Aggregate& a : aggregates) {
      if (a.instance == instance) return a;
    }
    aggregates.push_back({});
    aggregates.back().instance = instance;
    aggregates.back().best_upper = std::numeric_limits<double>::infinity();
    aggregates.back().best_gap_pct = std::numeric_limits<double>::infinity();
    return aggregates.back();
  };
  for (const RunRecord& r : records) {
    Aggregate& a = find(r.instance);
    ++a.runs;
    a.best_upper = std::min(a.best_upper, r.upper);
    a.avg_upper += r.upper;
    a.best_lower = std::max(a.best_lower, r.lower);
    a.avg_lower += r.lower;
    a.best_gap_pct = std::min(a.best_gap_pct, r.gap_pct);
    a.avg_gap_pct += r.gap_pct;
    if (r.status == "optimal") ++a.optimal_runs;
  }
  for (Aggregate& a : aggregates) {
    if (a.runs > 0) {
      a.avg_upper /= a.runs;
      a.avg_lower /= a.runs;
      a.avg_gap_pct /= a.runs;
    }
  }
  return aggregates;
}

std::string to_csv(const Aggregate& a) {
  std::ostringstream out;
  out << a.instance << ',' << a.runs << ',' << fmt(a.best_upper) << ','
      << fmt(a.avg_upper) << ',' << fmt(a.best_lower) << ','
      << fmt(a.avg_lower) << ',' << fmt(a.best_gap_pct) << ','
      << fmt(a.avg_gap_pct) << ',' << a.optimal_runs;
  return out.str();
}

}  // namespace ampack::cli
