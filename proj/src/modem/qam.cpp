#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wimax/kernels.hpp"
#include "wimax/modem.hpp"

namespace wimax::modem {

namespace {

// 32-point cross on the odd-integer grid {+-1, +-3, +-5} without corners.
// Labels chosen to minimize the total Hamming weight over minimum-distance
// neighbors (56 over 52 edges); 2 edges next to the cross arms differ in
// three bits.
constexpr std::array<std::array<int, 2>, 32> kCross32{{
    {3, -5},  {3, -3},  {3, 5},   {1, 5},   {-3, -5}, {5, -3},  {-3, 5},  {-1, 5},
    {-5, -3}, {3, -1},  {3, 3},   {3, 1},   {-3, -3}, {5, -1},  {5, 3},   {5, 1},
    {1, -5},  {1, -3},  {-5, 3},  {1, 3},   {-1, -5}, {-1, -3}, {-3, 3},  {-1, 3},
    {-5, -1}, {1, -1},  {-5, 1},  {1, 1},   {-3, -1}, {-1, -1}, {-3, 1},  {-1, 1},
}};

// Level for Gray code g on an L-level axis: levels -(L-1), ..., L-1.
int gray_level(unsigned g, unsigned levels) {
  unsigned index = 0;
  for (unsigned v = g; v; v >>= 1) index ^= v;  // inverse Gray code
  return 2 * static_cast<int>(index) - static_cast<int>(levels - 1);
}

}  // namespace

Constellation::Constellation(Modulation m) : modulation_(m), bits_(fec::bits_per_point(m)) {
  const unsigned size = static_cast<unsigned>(m);
  std::vector<std::array<int, 2>> lattice(size);
  if (m == Modulation::qam32) {
    std::copy(kCross32.begin(), kCross32.end(), lattice.begin());
  } else if (m == Modulation::qam16 || m == Modulation::qam64) {
    const unsigned half = bits_ / 2;
    const unsigned levels = 1u << half;
    for (unsigned label = 0; label < size; ++label)
      lattice[label] = {gray_level(label >> half, levels), gray_level(label & (levels - 1), levels)};
  } else {
    throw std::invalid_argument("unsupported constellation order");
  }
  double energy = 0.0;
  for (const auto& p : lattice) energy += p[0] * p[0] + p[1] * p[1];
  scale_ = 1.0 / std::sqrt(energy / size);
  for (const auto& p : lattice) {
    points_.emplace_back(p[0] * scale_, p[1] * scale_);
    i_.push_back(p[0] * scale_);
    q_.push_back(p[1] * scale_);
  }
}

const Constellation& Constellation::get(Modulation m) {
  static const Constellation c16(Modulation::qam16);
  static const Constellation c32(Modulation::qam32);
  static const Constellation c64(Modulation::qam64);
  switch (m) {
    case Modulation::qam16: return c16;
    case Modulation::qam32: return c32;
    case Modulation::qam64: return c64;
  }
  throw std::invalid_argument("unsupported constellation order");
}

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Modulation m) {
  const Constellation& c = Constellation::get(m);
  const unsigned k = c.bits_per_point();
  if (bits.size() % k != 0) throw std::invalid_argument("qam_map: bit count not divisible by log2(M)");
  std::vector<cplx> out(bits.size() / k);
  for (std::size_t s = 0; s < out.size(); ++s) {
    unsigned label = 0;
    for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[s * k + b] & 1u);
    out[s] = c.points()[label];
  }
  return out;
}

std::vector<std::uint16_t> qam_demap_labels(std::span<const cplx> samples, Modulation m) {
  const Constellation& c = Constellation::get(m);
  std::vector<std::uint16_t> labels(samples.size());
  kernels::active().nearest_point(samples.data(), samples.size(), c.in_phase().data(),
                                  c.quadrature().data(), c.size(), labels.data());
  return labels;
}

fec::Bits qam_demap(std::span<const cplx> samples, Modulation m,
                    std::span<const std::uint8_t> erased) {
  if (!erased.empty() && erased.size() != samples.size())
    throw std::invalid_argument("qam_demap: erasure mask length mismatch");
  const unsigned k = fec::bits_per_point(m);
  const auto labels = qam_demap_labels(samples, m);
  fec::Bits out(samples.size() * k);
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const bool gone = !erased.empty() && erased[s];
    for (unsigned b = 0; b < k; ++b)
      out[s * k + b] = gone ? fec::kErasure : static_cast<std::uint8_t>((labels[s] >> (k - 1 - b)) & 1u);
  }
  return out;
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double theoretical_ber_linear(Modulation m, double ebn0) {
  const double k = fec::bits_per_point(m);
  switch (m) {
    case Modulation::qam16:
    case Modulation::qam64: {
      const double size = static_cast<double>(m);
      return 4.0 / k * (1.0 - 1.0 / std::sqrt(size)) * q_function(std::sqrt(3.0 * k * ebn0 / (size - 1.0)));
    }
    case Modulation::qam32:
      // Es = 20 on the odd-integer grid, so (d_min / 2)^2 / (N0 / 2) = Eb/N0 / 2.
      return 3.5 / k * q_function(std::sqrt(ebn0 / 2.0));
  }
  throw std::invalid_argument("unsupported constellation order");
}

double theoretical_ber(Modulation m, double ebn0_db) {
  return theoretical_ber_linear(m, std::pow(10.0, ebn0_db / 10.0));
}

double nearest_neighbor_bit_weight(Modulation m) {
  const Constellation& c = Constellation::get(m);
  const double d2 = c.min_distance() * c.min_distance();
  unsigned total = 0;
  for (unsigned a = 0; a < c.size(); ++a)
    for (unsigned b = 0; b < c.size(); ++b)
      if (a != b && std::abs(std::norm(c.point(a) - c.point(b)) - d2) < 1e-9)
        total += static_cast<unsigned>(std::popcount(a ^ b));
  return static_cast<double>(total) / c.size();
}

}  // namespace wimax::modem
