#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ampack {

/// A part to be printed, reduced to its bounding box. Geometric quantities
/// are integral length units; the true volume may be smaller than the box.
struct Part {
  int id = 0;
  int width = 1;
  int length = 1;
  int height = 1;
  double volume = 0.0;

  long long area() const { return static_cast<long long>(width) * length; }
  long long box_volume() const {
    return static_cast<long long>(width) * length * height;
  }
  int max_side() const { return width >= length ? width : length; }
  int min_side() const { return width >= length ? length : width; }
};

/// A printer. Envelope dimensions are integral length units; the time
/// coefficients are hours (per batch, per volume unit, per height unit).
struct Machine {
  int id = 0;
  int width = 1;
  int length = 1;
  int height = 1;
  double setup_time = 0.0;
  double scan_time = 0.0;
  double recoat_time = 0.0;

  long long area() const { return static_cast<long long>(width) * length; }
};

/// Axis-aligned placement of one part on a build plate. `rotated` means the
/// part was turned 90 degrees, so its length runs along the x axis.
struct Placement {
  int part_id = 0;
  int x_start = 0;
  int x_end = 0;
  int y_start = 0;
  int y_end = 0;
  bool rotated = false;

  int x_extent() const { return x_end - x_start; }
  int y_extent() const { return y_end - y_start; }
};

/// One print job: a set of placed parts produced simultaneously.
struct Batch {
  int machine_id = 0;
  int index = 1;  // 1-based position within its machine's sequence
  std::vector<Placement> placements;
};

struct MachineSchedule {
  int machine_id = 0;
  std::vector<Batch> batches;
  std::vector<double> completion_times;
};

struct Solution {
  std::vector<MachineSchedule> machines;
  double makespan = 0.0;
};

struct InstanceMeta {
  std::string name;
  int part_class = 0;
  std::uint64_t seed = 0;
};

struct Instance {
  std::vector<Part> parts;
  std::vector<Machine> machines;
  std::optional<int> batch_limit;
  InstanceMeta meta;

  const Part& part_by_id(int id) const {
    for (const Part& p : parts) {
      if (p.id == id) return p;
    }
    throw std::out_of_range("unknown part id " + std::to_string(id));
  }

  const Machine& machine_by_id(int id) const {
    for (const Machine& m : machines) {
      if (m.id == id) return m;
    }
    throw std::out_of_range("unknown machine id " + std::to_string(id));
  }
};

int batch_height(const Instance& instance, const Batch& batch);
double batch_volume(const Instance& instance, const Batch& batch);
long long batch_area(const Instance& instance, const Batch& batch);
std::vector<int> batch_part_ids(const Batch& batch);

}  // namespace ampack
