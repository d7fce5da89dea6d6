#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include "ampack/types.hpp"

namespace ampack {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& path, int line,
             const std::string& message)
      : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           message) {}
};

/// Reads the native instance format. Dimensions are multiplied by the file's
/// declared scale and must come out integral; the recoat coefficient is
/// divided by the same scale so completion times are unchanged. Rejects
/// instances with a part fitting no machine or a batch limit below the
/// reduction bound.
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance,
                    const std::filesystem::path& path);

Solution read_solution(const std::filesystem::path& path);
void write_solution(const Solution& solution, const std::string& instance_name,
                    const std::filesystem::path& path);

struct OrientationVariant {
  int width = 1;
  int length = 1;
  int height = 1;
  double support_volume = 0.0;
};

/// Fixes a part's build orientation by the minimum-height rule; ties fall to
/// the smaller support volume, then to the first listed variant. The chosen
/// support volume is added to the part volume.
Part apply_mhu(int id, double base_volume,
               std::span<const OrientationVariant> variants);

/// Reads the adapter format for external part tables (per-part orientation
/// rows plus machine rows) and fixes orientations with apply_mhu.
Instance read_part_table(const std::filesystem::path& path);

/// Dispatches on the file's magic line: native instances and part tables
/// are both accepted wherever an instance is expected.
Instance read_any_instance(const std::filesystem::path& path);

}  // namespace ampack
