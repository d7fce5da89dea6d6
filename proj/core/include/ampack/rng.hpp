#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ampack {

/// Deterministic random source. All draws are mapped from the raw mt19937_64
/// stream by hand so that results are identical across platforms and library
/// implementations (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  /// Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(
          uniform_int(0, static_cast<int>(i) - 1));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// Derives an independent stream, e.g. one per sorting strategy.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ampack
