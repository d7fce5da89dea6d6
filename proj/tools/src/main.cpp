#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ampack/generator.hpp"
#include "ampack/instance_io.hpp"
#include "ampack/model.hpp"
#include "ampack/solver.hpp"
#include "run_record.hpp"

namespace {

using namespace ampack;
using cli::RunRecord;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

int default_workers() {
  if (const char* env = std::getenv("AMPACK_WORKERS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

struct SolveFlags {
  SolverConfig config;
  std::string variant = "org";
};

void add_solver_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--time-limit", flags.config.time_limit_s,
                  "Wall-clock limit in seconds")
      ->capture_default_str();
  cmd->add_option("--gap-tol", flags.config.gap_tolerance,
                  "Relative optimality gap tolerance")
      ->capture_default_str();
  cmd->add_option("--ris-budget", flags.config.ris_budget_s,
                  "Per-call budget in seconds while shrinking cuts")
      ->capture_default_str();
  cmd->add_option("--ts-area-fraction", flags.config.two_step_area_fraction,
                  "Batch-area cap of the restricted first phase")
      ->capture_default_str();
  cmd->add_option("--ts-time-fraction", flags.config.two_step_time_fraction,
                  "Share of the time limit spent in the first phase")
      ->capture_default_str();
  cmd->add_option("--seed", flags.config.seed, "Random seed")
      ->capture_default_str();
  cmd->add_option("--variant", flags.variant, "Solver variant")
      ->check(CLI::IsMember({"org", "ts"}))
      ->capture_default_str();
}

SolveResult run_variant(const Instance& instance, const SolveFlags& flags) {
  if (flags.variant == "ts") return solve_two_step(instance, flags.config);
  return solve(instance, flags.config);
}

RunRecord solve_to_record(const std::filesystem::path& path,
                          const SolveFlags& flags,
                          Solution* solution_out = nullptr) {
  const Instance instance = read_any_instance(path);
  const auto started = std::chrono::steady_clock::now();
  const SolveResult result = run_variant(instance, flags);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  const std::string name =
      instance.meta.name.empty() ? path.stem().string() : instance.meta.name;
  if (solution_out != nullptr) *solution_out = result.incumbent;
  return cli::make_record(name, flags.variant, flags.config.seed, result,
                          wall);
}

int cmd_generate(int part_class, int parts, int machines,
                 std::uint64_t first_seed, int count, int reference_dim,
                 const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (int k = 0; k < count; ++k) {
    GeneratorSpec spec;
    spec.part_class = part_class;
    spec.part_count = parts;
    spec.machine_count = machines;
    spec.seed = first_seed + static_cast<std::uint64_t>(k);
    if (reference_dim > 0) spec.reference_dim = reference_dim;
    const Instance instance = generate_instance(spec);
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / (instance.meta.name + ".inst");
    write_instance(instance, path);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& solution_path,
              const std::string& record_path) {
  Solution solution;
  const RunRecord record = solve_to_record(instance_path, flags, &solution);

  if (!solution_path.empty()) {
    write_solution(solution, record.instance, solution_path);
  }
  if (!record_path.empty()) {
    const bool fresh = !std::filesystem::exists(record_path);
    std::ofstream out(record_path, std::ios::app);
    if (fresh) out << cli::kRunRecordHeader << "\n";
    out << cli::to_csv(record) << "\n";
  }
  std::cout << cli::kRunRecordHeader << "\n" << cli::to_csv(record) << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& instance_path,
                 const std::string& solution_path) {
  const Instance instance = read_any_instance(instance_path);
  const Solution solution = read_solution(solution_path);
  const ValidationReport report = validate_solution(instance, solution);
  if (report.ok()) {
    std::cout << "ok: solution satisfies all model constraints\n";
    return kExitOk;
  }
  for (const Violation& violation : report.violations) {
    std::cout << "violation: " << violation.detail << "\n";
  }
  std::cout << report.violations.size() << " violation(s)\n";
  return kExitInvalid;
}

int cmd_bench(const std::vector<std::string>& instance_paths,
              const std::vector<std::string>& variants,
              const std::vector<std::uint64_t>& seeds, SolveFlags base_flags,
              const std::string& out_path, int workers) {
  struct Job {
    std::filesystem::path path;
    std::string variant;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const std::string& path : instance_paths) {
    for (const std::string& variant : variants) {
      for (std::uint64_t seed : seeds) {
        jobs.push_back({path, variant, seed});
      }
    }
  }

  std::vector<RunRecord> records(jobs.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&]() {
    while (true) {
      std::size_t mine;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= jobs.size()) return;
        mine = next++;
      }
      const Job& job = jobs[mine];
      SolveFlags flags = base_flags;
      flags.variant = job.variant;
      flags.config.seed = job.seed;
      try {
        records[mine] = solve_to_record(job.path, flags);
      } catch (const std::exception& error) {
        RunRecord failed;
        failed.instance = job.path.stem().string();
        failed.variant = job.variant;
        failed.seed = job.seed;
        failed.status = "error";
        records[mine] = failed;
        std::cerr << job.path.string() << ": " << error.what() << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  const int thread_count =
      std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (std::thread& thread : pool) thread.join();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInvalid;
    }
    out = &file;
  }
  *out << cli::kRunRecordHeader << "\n";
  for (const RunRecord& record : records) *out << cli::to_csv(record) << "\n";
  *out << "\n" << cli::kAggregateHeader << "\n";
  for (const cli::Aggregate& aggregate : cli::aggregate_records(records)) {
    *out << cli::to_csv(aggregate) << "\n";
  }
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& tables,
               const std::string& out_path) {
  std::vector<RunRecord> records;
  for (const std::string& table : tables) {
    std::ifstream in(table);
    if (!in) {
      std::cerr << "cannot read " << table << "\n";
      return kExitInvalid;
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) break;  // aggregate block follows the rows
      if (line.rfind("instance,", 0) == 0) continue;
      records.push_back(cli::parse_csv_row(line));
    }
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    out = &file;
  }
  *out << cli::kAggregateHeader << "\n";
  for (const cli::Aggregate& aggregate : cli::aggregate_records(records)) {
    *out << cli::to_csv(aggregate) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch packing and scheduling for additive manufacturing"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "Generate benchmark instances into a directory");
  int g_class = 1, g_parts = 10, g_machines = 2, g_count = 1, g_ref = 0;
  std::uint64_t g_seed = 1;
  std::string g_out = ".";
  generate->add_option("--class", g_class, "Part class (1-4)")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  generate->add_option("--parts", g_parts, "Number of parts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--machines", g_machines, "Number of machines")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", g_seed, "First seed")->capture_default_str();
  generate->add_option("--count", g_count, "Instances to generate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--reference-dim", g_ref,
                       "Override the class reference dimension");
  generate->add_option("--out-dir", g_out, "Output directory")
      ->capture_default_str();

  // solve
  auto* solve_cmd =
      app.add_subcommand("solve", "Solve one instance to optimality");
  std::string s_instance, s_solution, s_record;
  SolveFlags s_flags;
  solve_cmd->add_option("instance", s_instance, "Instance file")->required();
  solve_cmd->add_option("--solution", s_solution, "Solution output file");
  solve_cmd->add_option("--record", s_record, "Append the run record here");
  add_solver_flags(solve_cmd, s_flags);

  // validate
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check a solution file against its instance");
  std::string v_instance, v_solution;
  validate_cmd->add_option("instance", v_instance, "Instance file")
      ->required();
  validate_cmd->add_option("solution", v_solution, "Solution file")
      ->required();

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "Run a suite and emit a record table");
  std::vector<std::string> b_instances, b_variants = {"org", "ts"};
  std::vector<std::uint64_t> b_seeds = {1, 2, 3};
  std::string b_out;
  int b_workers = default_workers();
  SolveFlags b_flags;
  bench_cmd->add_option("instances", b_instances, "Instance files")
      ->required();
  bench_cmd->add_option("--variants", b_variants, "Variants to run")
      ->delimiter(',');
  bench_cmd->add_option("--seeds", b_seeds, "Seeds to run")->delimiter(',');
  bench_cmd->add_option("--out", b_out, "Output table (default stdout)");
  bench_cmd->add_option("--workers", b_workers,
                        "Parallel runs (env AMPACK_WORKERS)")
      ->capture_default_str();
  add_solver_flags(bench_cmd, b_flags);

  // report
  auto* report_cmd =
      app.add_subcommand("report", "Aggregate one or more record tables");
  std::vector<std::string> r_tables;
  std::string r_out;
  report_cmd->add_option("tables", r_tables, "Record tables")->required();
  report_cmd->add_option("--out", r_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) return app.exit(error);  // --help
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(g_class, g_parts, g_machines, g_seed, g_count, g_ref,
                          g_out);
    }
    if (solve_cmd->parsed()) {
      return cmd_solve(s_instance, s_flags, s_solution, s_record);
    }
    if (validate_cmd->parsed()) return cmd_validate(v_instance, v_solution);
    if (bench_cmd->parsed()) {
      return cmd_bench(b_instances, b_variants, b_seeds, b_flags, b_out,
                       b_workers);
    }
    if (report_cmd->parsed()) return cmd_report(r_tables, r_out);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
