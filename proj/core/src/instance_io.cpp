#include "ampack/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "ampack/model.hpp"
#include "ampack/preprocess.hpp"

namespace ampack {

namespace {

struct Tokenizer {
  std::filesystem::path path;
  std::ifstream stream;
  int line_number = 0;
  std::vector<std::string> tokens;

  explicit Tokenizer(const std::filesystem::path& p)
      : path(p), stream(p) {
    if (!stream) throw ParseError(p, 0, "cannot open file");
  }

  /// Next non-empty line split on whitespace, comments stripped.
  bool next_line() {
    std::string raw;
    while (std::getline(stream, raw)) {
      ++line_number;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream in(raw);
      tokens.clear();
      std::string token;
      while (in >> token) tokens.push_back(token);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(path, line_number, message);
  }

  void expect_size(std::size_t count) const {
    if (tokens.size() != count) {
      fail("expected " + std::to_string(count) + " fields, got " +
           std::to_string(tokens.size()));
    }
  }

  long long to_int(const std::string& token) const {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(token, &used);
      if (used != token.size()) fail("bad integer '" + token + "'");
      return value;
    } catch (const std::logic_error&) {
      fail("bad integer '" + token + "'");
    }
  }

  double to_double(const std::string& token) const {
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) fail("bad number '" + token + "'");
      return value;
    } catch (const std::logic_error&) {
      fail("bad number '" + token + "'");
    }
  }
};

int scaled_dimension(const Tokenizer& t, const std::string& token, int scale,
                     const char* what) {
  const double scaled = t.to_double(token) * scale;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-6) {
    t.fail(std::string(what) + " '" + token +
           "' is not integral at scale " + std::to_string(scale));
  }
  if (rounded < 1.0) t.fail(std::string(what) + " must be at least 1");
  return static_cast<int>(rounded);
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void validate_instance(const Tokenizer& t, const Instance& instance) {
  std::set<int> part_ids, machine_ids;
  for (const Machine& m : instance.machines) {
    if (!machine_ids.insert(m.id).second) {
      t.fail("duplicate machine id " + std::to_string(m.id));
    }
    if (m.setup_time < 0 || m.scan_time < 0 || m.recoat_time < 0) {
      t.fail("negative time coefficient on machine " + std::to_string(m.id));
    }
  }
  for (const Part& p : instance.parts) {
    if (!part_ids.insert(p.id).second) {
      t.fail("duplicate part id " + std::to_string(p.id));
    }
    if (p.volume < 0) t.fail("negative volume on part " + std::to_string(p.id));
    if (p.volume > static_cast<double>(p.box_volume()) + 1e-9) {
      t.fail("volume exceeds bounding box on part " + std::to_string(p.id));
    }
    bool fits = false;
    for (const Machine& m : instance.machines) {
      if (part_fits_machine(p, m)) {
        fits = true;
        break;
      }
    }
    if (!fits) t.fail("part " + std::to_string(p.id) + " fits no machine");
  }
  if (instance.batch_limit.has_value()) {
    const int needed = reduce_batch_count(instance);
    if (*instance.batch_limit < needed) {
      t.fail("batch-limit " + std::to_string(*instance.batch_limit) +
             " is below the reduction bound " + std::to_string(needed));
    }
  }
}

Instance read_instance_body(Tokenizer& t) {
  Instance instance;
  int scale = 1;
  std::optional<int> machine_count, part_count;

  while (t.next_line()) {
    const std::string& head = t.tokens[0];
    if (head == "name") {
      t.expect_size(2);
      instance.meta.name = t.tokens[1];
    } else if (head == "class") {
      t.expect_size(2);
      instance.meta.part_class = static_cast<int>(t.to_int(t.tokens[1]));
    } else if (head == "seed") {
      t.expect_size(2);
      instance.meta.seed = static_cast<std::uint64_t>(t.to_int(t.tokens[1]));
    } else if (head == "scale") {
      t.expect_size(2);
      scale = static_cast<int>(t.to_int(t.tokens[1]));
      if (scale < 1) t.fail("scale must be positive");
    } else if (head == "batch-limit") {
      t.expect_size(2);
      instance.batch_limit = static_cast<int>(t.to_int(t.tokens[1]));
    } else if (head == "machines") {
      t.expect_size(2);
      machine_count = static_cast<int>(t.to_int(t.tokens[1]));
    } else if (head == "machine") {
      t.expect_size(8);
      Machine machine;
      machine.id = static_cast<int>(t.to_int(t.tokens[1]));
      machine.width = scaled_dimension(t, t.tokens[2], scale, "machine width");
      machine.length = scaled_dimension(t, t.tokens[3], scale, "machine length");
      machine.height = scaled_dimension(t, t.tokens[4], scale, "machine height");
      machine.setup_time = t.to_double(t.tokens[5]);
      machine.scan_time = t.to_double(t.tokens[6]);
      machine.recoat_time = t.to_double(t.tokens[7]) / scale;
      instance.machines.push_back(machine);
    } else if (head == "parts") {
      t.expect_size(2);
      part_count = static_cast<int>(t.to_int(t.tokens[1]));
    } else if (head == "part") {
      t.expect_size(6);
      Part part;
      part.id = static_cast<int>(t.to_int(t.tokens[1]));
      part.width = scaled_dimension(t, t.tokens[2], scale, "part width");
      part.length = scaled_dimension(t, t.tokens[3], scale, "part length");
      part.height = scaled_dimension(t, t.tokens[4], scale, "part height");
      part.volume = t.to_double(t.tokens[5]);
      instance.parts.push_back(part);
    } else if (head == "end") {
      if (machine_count.has_value() &&
          static_cast<std::size_t>(*machine_count) !=
              instance.machines.size()) {
        t.fail("machine count mismatch");
      }
      if (part_count.has_value() &&
          static_cast<std::size_t>(*part_count) != instance.parts.size()) {
        t.fail("part count mismatch");
      }
      if (instance.machines.empty()) t.fail("missing machine block");
      if (instance.parts.empty()) t.fail("missing part block");
      validate_instance(t, instance);
      return instance;
    } else {
      t.fail("unknown directive '" + head + "'");
    }
  }
  t.fail("missing 'end'");
}

}  // namespace

Instance read_instance(const std::filesystem::path& path) {
  Tokenizer t(path);
  if (!t.next_line() || t.tokens.size() != 3 || t.tokens[0] != "ampack" ||
      t.tokens[1] != "instance" || t.tokens[2] != "1") {
    t.fail("expected header 'ampack instance 1'");
  }
  return read_instance_body(t);
}

void write_instance(const Instance& instance,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "ampack instance 1\n";
  if (!instance.meta.name.empty()) out << "name " << instance.meta.name << "\n";
  if (instance.meta.part_class != 0) {
    out << "class " << instance.meta.part_class << "\n";
  }
  out << "seed " << instance.meta.seed << "\n";
  out << "scale 1\n";
  out << "machines " << instance.machines.size() << "\n";
  for (const Machine& m : instance.machines) {
    out << "machine " << m.id << " " << m.width << " " << m.length << " "
        << m.height << " " << format_double(m.setup_time) << " "
        << format_double(m.scan_time) << " " << format_double(m.recoat_time)
        << "\n";
  }
  out << "parts " << instance.parts.size() << "\n";
  for (const Part& p : instance.parts) {
    out << "part " << p.id << " " << p.width << " " << p.length << " "
        << p.height << " " << format_double(p.volume) << "\n";
  }
  if (instance.batch_limit.has_value()) {
    out << "batch-limit " << *instance.batch_limit << "\n";
  }
  out << "end\n";
}

Solution read_solution(const std::filesystem::path& path) {
  Tokenizer t(path);
  if (!t.next_line() || t.tokens.size() != 3 || t.tokens[0] != "ampack" ||
      t.tokens[1] != "solution" || t.tokens[2] != "1") {
    t.fail("expected header 'ampack solution 1'");
  }
  Solution solution;
  MachineSchedule* schedule = nullptr;
  Batch* batch = nullptr;
  while (t.next_line()) {
    const std::string& head = t.tokens[0];
    if (head == "instance") {
      t.expect_size(2);
    } else if (head == "makespan") {
      t.expect_size(2);
      solution.makespan = t.to_double(t.tokens[1]);
    } else if (head == "machine") {
      t.expect_size(4);
      if (t.tokens[2] != "batches") t.fail("expected 'batches'");
      solution.machines.emplace_back();
      schedule = &solution.machines.back();
      schedule->machine_id = static_cast<int>(t.to_int(t.tokens[1]));
      batch = nullptr;
    } else if (head == "batch") {
      t.expect_size(6);
      if (schedule == nullptr) t.fail("batch before machine");
      if (t.tokens[2] != "placements" || t.tokens[4] != "completion") {
        t.fail("expected 'batch <i> placements <n> completion <t>'");
      }
      schedule->batches.emplace_back();
      batch = &schedule->batches.back();
      batch->machine_id = schedule->machine_id;
      batch->index = static_cast<int>(t.to_int(t.tokens[1]));
      schedule->completion_times.push_back(t.to_double(t.tokens[5]));
    } else if (head == "place") {
      t.expect_size(7);
      if (batch == nullptr) t.fail("place before batch");
      Placement p;
      p.part_id = static_cast<int>(t.to_int(t.tokens[1]));
      p.x_start = static_cast<int>(t.to_int(t.tokens[2]));
      p.y_start = static_cast<int>(t.to_int(t.tokens[3]));
      p.x_end = static_cast<int>(t.to_int(t.tokens[4]));
      p.y_end = static_cast<int>(t.to_int(t.tokens[5]));
      p.rotated = t.to_int(t.tokens[6]) != 0;
      batch->placements.push_back(p);
    } else if (head == "end") {
      return solution;
    } else {
      t.fail("unknown directive '" + head + "'");
    }
  }
  t.fail("missing 'end'");
}

void write_solution(const Solution& solution, const std::string& instance_name,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "ampack solution 1\n";
  if (!instance_name.empty()) out << "instance " << instance_name << "\n";
  out << "makespan " << format_double(solution.makespan) << "\n";
  for (const MachineSchedule& schedule : solution.machines) {
    out << "machine " << schedule.machine_id << " batches "
        << schedule.batches.size() << "\n";
    for (std::size_t b = 0; b < schedule.batches.size(); ++b) {
      const Batch& batch = schedule.batches[b];
      const double completion = b < schedule.completion_times.size()
                                    ? schedule.completion_times[b]
                                    : 0.0;
      out << "batch " << batch.index << " placements "
          << batch.placements.size() << " completion "
          << format_double(completion) << "\n";
      for (const Placement& p : batch.placements) {
        out << "place " << p.part_id << " " << p.x_start << " " << p.y_start
            << " " << p.x_end << " " << p.y_end << " " << (p.rotated ? 1 : 0)
            << "\n";
      }
    }
  }
  out << "end\n";
}

Part apply_mhu(int id, double base_volume,
               std::span<const OrientationVariant> variants) {
  if (variants.empty()) {
    throw std::invalid_argument("apply_mhu needs at least one orientation");
  }
  std::size_t best = 0;
  for (std::size_t v = 1; v < variants.size(); ++v) {
    if (variants[v].height < variants[best].height ||
        (variants[v].height == variants[best].height &&
         variants[v].support_volume < variants[best].support_volume)) {
      best = v;
    }
  }
  Part part;
  part.id = id;
  part.width = variants[best].width;
  part.length = variants[best].length;
  part.height = variants[best].height;
  part.volume = base_volume + variants[best].support_volume;
  return part;
}

Instance read_part_table(const std::filesystem::path& path) {
  Tokenizer t(path);
  if (!t.next_line() || t.tokens.size() != 3 || t.tokens[0] != "ampack" ||
      t.tokens[1] != "parts" || t.tokens[2] != "1") {
    t.fail("expected header 'ampack parts 1'");
  }
  Instance instance;
  int scale = 1;
  while (t.next_line()) {
    const std::string& head = t.tokens[0];
    if (head == "name") {
      t.expect_size(2);
      instance.meta.name = t.tokens[1];
    } else if (head == "scale") {
      t.expect_size(2);
      scale = static_cast<int>(t.to_int(t.tokens[1]));
      if (scale < 1) t.fail("scale must be positive");
    } else if (head == "machines") {
      t.expect_size(2);
    } else if (head == "machine") {
      t.expect_size(8);
      Machine machine;
      machine.id = static_cast<int>(t.to_int(t.tokens[1]));
      machine.width = scaled_dimension(t, t.tokens[2], scale, "machine width");
      machine.length = scaled_dimension(t, t.tokens[3], scale, "machine length");
      machine.height = scaled_dimension(t, t.tokens[4], scale, "machine height");
      machine.setup_time = t.to_double(t.tokens[5]);
      machine.scan_time = t.to_double(t.tokens[6]);
      machine.recoat_time = t.to_double(t.tokens[7]) / scale;
      instance.machines.push_back(machine);
    } else if (head == "parts") {
      t.expect_size(2);
    } else if (head == "part") {
      t.expect_size(4);
      const int id = static_cast<int>(t.to_int(t.tokens[1]));
      const double base_volume = t.to_double(t.tokens[2]);
      const int orientation_count = static_cast<int>(t.to_int(t.tokens[3]));
      if (orientation_count < 1) t.fail("part needs at least one orientation");
      std::vector<OrientationVariant> variants;
      for (int v = 0; v < orientation_count; ++v) {
        if (!t.next_line() || t.tokens[0] != "orient") {
          t.fail("expected 'orient' row");
        }
        t.expect_size(5);
        OrientationVariant variant;
        variant.width = static_cast<int>(t.to_int(t.tokens[1]));
        variant.length = static_cast<int>(t.to_int(t.tokens[2]));
        variant.height = static_cast<int>(t.to_int(t.tokens[3]));
        variant.support_volume = t.to_double(t.tokens[4]);
        variants.push_back(variant);
      }
      Part part = apply_mhu(id, base_volume, variants);
      part.width *= scale;
      part.length *= scale;
      part.height *= scale;
      instance.parts.push_back(part);
    } else if (head == "end") {
      if (instance.machines.empty()) t.fail("missing machine block");
      if (instance.parts.empty()) t.fail("missing part block");
      validate_instance(t, instance);
      return instance;
    } else {
      t.fail("unknown directive '" + head + "'");
    }
  }
  t.fail("missing 'end'");
}

Instance read_any_instance(const std::filesystem::path& path) {
  std::ifstream probe(path);
  if (!probe) throw ParseError(path, 0, "cannot open file");
  std::string first;
  std::getline(probe, first);
  probe.close();
  if (first.find("ampack parts") != std::string::npos) {
    return read_part_table(path);
  }
  return read_instance(path);
}

}  // namespace ampack
