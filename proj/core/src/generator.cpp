#include "ampack/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ampack/model.hpp"
#include "ampack/rng.hpp"

namespace ampack {

namespace {

struct Envelope {
  int width;
  int length;
  int height;
};

// Machine types from small desktop printers up to a wide-format build space.
constexpr Envelope kEnvelopes[6] = {
    {40, 40, 25}, {25, 25, 20}, {28, 28, 24},
    {28, 28, 32}, {40, 40, 20}, {28, 50, 36},
};

Machine draw_machine(int id, const Envelope& envelope, Rng& rng) {
  Machine machine;
  machine.id = id;
  machine.width = envelope.width;
  machine.length = envelope.length;
  machine.height = envelope.height;
  const int scan_speed = rng.uniform_int(8, 11) * 1000;   // mm/s
  const int layer_speed = rng.uniform_int(3, 7);          // s/layer
  const int laser_diameter = rng.uniform_int(8, 11);      // 1/100 mm
  const int layer_thickness = rng.uniform_int(4, 10);     // 1/100 mm
  machine.setup_time = rng.uniform_real(1.0, 2.0);
  machine.scan_time = scan_time_per_volume(scan_speed, laser_diameter / 100.0,
                                           layer_thickness / 100.0);
  machine.recoat_time =
      recoat_time_per_height(layer_speed, layer_thickness / 100.0);
  return machine;
}

struct Range {
  int lo;
  int hi;
};

struct TypeRanges {
  Range width;
  Range length;
};

TypeRanges ranges_for_type(int type, int d) {
  const int fifth = std::max(1, d / 5);
  const int two_fifths = std::max(1, 2 * d / 5);
  const int three_fifths = std::max(1, 3 * d / 5);
  const int four_fifths = std::max(1, 4 * d / 5);
  switch (type) {
    case 1:
      return {{1, fifth}, {1, fifth}};
    case 2:
      return {{1, fifth}, {fifth, three_fifths}};
    case 3:
      return {{fifth, two_fifths}, {fifth, four_fifths}};
    case 4:
      return {{fifth, three_fifths}, {fifth, three_fifths}};
    default:
      throw std::invalid_argument("part type out of range");
  }
}

int draw_type(int dominant, Rng& rng) {
  const double u = rng.uniform_real(0.0, 1.0);
  if (u < 0.7) return dominant;
  int others[3];
  int count = 0;
  for (int t = 1; t <= 4; ++t) {
    if (t != dominant) others[count++] = t;
  }
  if (u < 0.8) return others[0];
  if (u < 0.9) return others[1];
  return others[2];
}

}  // namespace

double scan_time_per_volume(double scan_speed, double laser_diameter,
                            double layer_thickness) {
  // Fused volume rate is speed * diameter * thickness in mm^3/s; 1000 mm^3
  // per cm^3 and 3600 s per hour.
  const double volume_rate = scan_speed * laser_diameter * layer_thickness;
  return 1000.0 / (volume_rate * 3600.0);
}

double recoat_time_per_height(double layer_speed, double layer_thickness) {
  // layer_speed / layer_thickness is s/mm of height; 10 mm/cm, 3600 s/h.
  return (layer_speed / layer_thickness) * 10.0 / 3600.0;
}

Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.part_class < 1 || spec.part_class > 4) {
    throw std::invalid_argument("part class must be 1..4");
  }
  if (spec.part_count < 1 || spec.machine_count < 1) {
    throw std::invalid_argument("need at least one part and one machine");
  }

  const int reference =
      spec.reference_dim.value_or(spec.part_class == 4 ? 500 : 50);
  Rng rng(spec.seed);

  Instance instance;
  instance.meta.part_class = spec.part_class;
  instance.meta.seed = spec.seed;
  instance.meta.name = "class" + std::to_string(spec.part_class) + "-i" +
                       std::to_string(spec.part_count) + "-m" +
                       std::to_string(spec.machine_count) + "-s" +
                       std::to_string(spec.seed);

  // The first machine always carries the type-1 envelope so that the part
  // ranges of classes 1-3 are guaranteed to fit somewhere.
  instance.machines.push_back(draw_machine(0, kEnvelopes[0], rng));
  for (int m = 1; m < spec.machine_count; ++m) {
    const int type = rng.uniform_int(0, 5);
    instance.machines.push_back(draw_machine(m, kEnvelopes[type], rng));
  }

  const int max_height = std::max(1, reference / 2);
  for (int i = 0; i < spec.part_count; ++i) {
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      const int type = draw_type(spec.part_class, rng);
      const TypeRanges ranges = ranges_for_type(type, reference);
      Part part;
      part.id = i;
      part.width = rng.uniform_int(ranges.width.lo, ranges.width.hi);
      part.length = rng.uniform_int(ranges.length.lo, ranges.length.hi);
      part.height = rng.uniform_int(1, max_height);
      part.volume =
          rng.uniform_real(0.3, 1.0) * static_cast<double>(part.box_volume());
      for (const Machine& machine : instance.machines) {
        if (part_fits_machine(part, machine)) {
          accepted = true;
          break;
        }
      }
      if (accepted) instance.parts.push_back(part);
    }
    if (!accepted) {
      throw std::runtime_error(
          "part " + std::to_string(i) + " fits no machine after 1000 draws " +
          "(reference dimension " + std::to_string(reference) +
          " exceeds the machine envelopes; override it for class 4)");
    }
  }
  return instance;
}

}  // namespace ampack
