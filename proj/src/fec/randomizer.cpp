#include <stdexcept>

#include "wimax/fec.hpp"

namespace wimax::fec {

namespace {
// Register bit i holds stage i+1; output taps stages 14 and 15 and is fed
// back into stage 1.
inline std::uint8_t step(std::uint16_t& reg) noexcept {
  const auto out = static_cast<std::uint8_t>(((reg >> 13) ^ (reg >> 14)) & 1u);
  reg = static_cast<std::uint16_t>(((reg << 1) | out) & 0x7FFF);
  return out;
}
}  // namespace

Bits randomize(std::span<const std::uint8_t> bits, std::uint16_t seed) {
  std::uint16_t reg = seed & 0x7FFF;
  Bits out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = static_cast<std::uint8_t>(bits[i] ^ step(reg));
  return out;
}

std::vector<std::uint8_t> randomize_bytes(std::span<const std::uint8_t> bytes, std::uint16_t seed) {
  std::uint16_t reg = seed & 0x7FFF;
  std::vector<std::uint8_t> out(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::uint8_t mask = 0;
    for (int b = 7; b >= 0; --b) mask = static_cast<std::uint8_t>(mask | (step(reg) << b));
    out[i] = static_cast<std::uint8_t>(bytes[i] ^ mask);
  }
  return out;
}

Bits unpack_bits(std::span<const std::uint8_t> bytes) {
  Bits out(bytes.size() * 8);
  for (std::size_t i = 0; i < bytes.size(); ++i)
    for (unsigned b = 0; b < 8; ++b) out[8 * i + b] = (bytes[i] >> (7 - b)) & 1u;
  return out;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8) throw std::invalid_argument("pack_bits: length is not a multiple of 8");
  std::vector<std::uint8_t> out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t v = 0;
    for (unsigned b = 0; b < 8; ++b) v = static_cast<std::uint8_t>((v << 1) | (bits[8 * i + b] & 1u));
    out[i] = v;
  }
  return out;
}

}  // namespace wimax::fec
