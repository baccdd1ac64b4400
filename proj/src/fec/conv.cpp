#include <bit>
#include <stdexcept>

#include "detail_conv.hpp"
#include "wimax/fec.hpp"

namespace wimax::fec {

ConvCode ConvCode::make(CcRate rate) {
  ConvCode cc;
  cc.rate = rate;
  switch (rate) {
    case CcRate::r1_2: cc.puncture = {1, 1}; break;
    case CcRate::r2_3: cc.puncture = {1, 1, 0, 1}; break;
    case CcRate::r3_4: cc.puncture = {1, 1, 0, 1, 1, 0}; break;
  }
  return cc;
}

std::size_t ConvCode::punctured_length(std::size_t input_bits) const noexcept {
  const std::size_t mother = 2 * input_bits;
  const std::size_t period = puncture.size();
  std::size_t kept_per_period = 0;
  for (auto k : puncture) kept_per_period += k;
  std::size_t len = (mother / period) * kept_per_period;
  for (std::size_t i = 0; i < mother % period; ++i) len += puncture[i];
  return len;
}

std::string ConvCode::rate_label() const {
  switch (rate) {
    case CcRate::r1_2: return "1/2";
    case CcRate::r2_3: return "2/3";
    case CcRate::r3_4: return "3/4";
  }
  return "?";
}

Bits conv_encode(std::span<const std::uint8_t> bits, const ConvCode& cc) {
  Bits out;
  out.reserve(cc.punctured_length(bits.size()));
  unsigned reg = 0;
  std::size_t pos = 0;
  const std::size_t period = cc.puncture.size();
  for (std::uint8_t b : bits) {
    reg = ((reg << 1) | (b & 1u)) & 0x7Fu;
    const auto x = static_cast<std::uint8_t>(std::popcount(reg & detail::kTapsX) & 1);
    const auto y = static_cast<std::uint8_t>(std::popcount(reg & detail::kTapsY) & 1);
    if (cc.puncture[pos++ % period]) out.push_back(x);
    if (cc.puncture[pos++ % period]) out.push_back(y);
  }
  return out;
}

}  // namespace wimax::fec
