#include <algorithm>
#include <stdexcept>

#include "wimax/fec.hpp"

namespace wimax::fec {

std::vector<std::size_t> interleaver_map(unsigned bits_per_point) {
  if (bits_per_point == 0) throw std::invalid_argument("interleaver: bits per point must be positive");
  const std::size_t n = std::size_t{kDataCarriers} * bits_per_point;
  const std::size_t s = std::max<std::size_t>(bits_per_point / 2, 1);
  std::vector<std::size_t> map(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Spread adjacent bits over non-adjacent carriers, then rotate so they
    // alternate between more and less reliable constellation bits.
    const std::size_t m = (n / 12) * (k % 12) + k / 12;
    map[k] = s * (m / s) + (m + n - (12 * m) / n) % s;
  }
  return map;
}

namespace {
void check_size(std::size_t got, unsigned bpp) {
  if (got != std::size_t{kDataCarriers} * bpp)
    throw std::invalid_argument("interleaver: block must be 192 * bits-per-point bits");
}
}  // namespace

Bits interleave(std::span<const std::uint8_t> bits, unsigned bits_per_point) {
  check_size(bits.size(), bits_per_point);
  const auto map = interleaver_map(bits_per_point);
  Bits out(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) out[map[k]] = bits[k];
  return out;
}

Bits deinterleave(std::span<const std::uint8_t> bits, unsigned bits_per_point) {
  check_size(bits.size(), bits_per_point);
  const auto map = interleaver_map(bits_per_point);
  Bits out(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) out[k] = bits[map[k]];
  return out;
}

}  // namespace wimax::fec
