#include "wimax/rng.hpp"

#include <cmath>
#include <numbers>

namespace wimax {

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> labels) {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t label : labels) {
    state ^= label + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    h = splitmix64(state);
  }
  return h;
}

double Rng::uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> Rng::complex_gaussian(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = gaussian();
  const double im = gaussian();
  return {s * re, s * im};
}

}  // namespace wimax
