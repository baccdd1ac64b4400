#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace wimax {

/// Labels for the independent per-purpose streams derived from one seed.
enum class Stream : std::uint64_t {
  data = 0x64617461,
  channel = 0x6368616e,
  noise = 0x6e6f6973,
  pilots = 0x70696c6f,
};

/// 64-bit Mersenne Twister with Box-Muller normal variates.
///
/// Output is fully determined by the seed within this implementation; no
/// cross-language bit compatibility is attempted.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed derived from a master seed and a list of labels (point index,
  /// frame index, stream label, ...) by SplitMix64 mixing.
  static std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> labels);
  static Rng derive(std::uint64_t master, std::initializer_list<std::uint64_t> labels) {
    return Rng(derive_seed(master, labels));
  }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal.
  double gaussian();
  /// Circular complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_gaussian(double variance = 1.0);
  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
  std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wimax
