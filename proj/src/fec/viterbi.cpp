#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

#include "detail_conv.hpp"
#include "wimax/fec.hpp"
#include "wimax/kernels.hpp"

namespace wimax::fec {

namespace {

struct Trellis {
  // Expected (x, y) for the transition from predecessor j into state 2j+b,
  // indexed [b * 32 + j].
  std::array<std::uint8_t, 64> x{};
  std::array<std::uint8_t, 64> y{};
  Trellis() {
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned j = 0; j < 32; ++j) {
        const unsigned reg = 2 * j + b;
        x[b * 32 + j] = static_cast<std::uint8_t>(std::popcount(reg & detail::kTapsX) & 1);
        y[b * 32 + j] = static_cast<std::uint8_t>(std::popcount(reg & detail::kTapsY) & 1);
      }
  }
};

const Trellis& trellis() {
  static const Trellis t;
  return t;
}

std::size_t input_length_for(std::size_t coded, const ConvCode& cc) {
  const std::size_t period = cc.puncture.size();
  std::size_t kept = 0;
  for (auto k : cc.puncture) kept += k;
  // Each input bit yields at least 2 * kept / period outputs on average.
  const std::size_t guess = coded * period / (2 * kept);
  for (std::size_t n = guess > 2 ? guess - 2 : 0; n <= guess + 2; ++n)
    if (cc.punctured_length(n) == coded) return n;
  throw std::invalid_argument("viterbi_decode: length inconsistent with puncturing pattern");
}

constexpr std::size_t kRenormInterval = 1024;

}  // namespace

Bits viterbi_decode(std::span<const std::uint8_t> coded, const ConvCode& cc) {
  const std::size_t steps = input_length_for(coded.size(), cc);
  if (steps < ConvCode::memory)
    throw std::invalid_argument("viterbi_decode: input shorter than the encoder tail");

  // Depuncture into (x, y) pairs with erasures in the deleted positions.
  std::vector<std::uint8_t> mother(2 * steps, kErasure);
  const std::size_t period = cc.puncture.size();
  for (std::size_t pos = 0, in = 0; pos < mother.size(); ++pos)
    if (cc.puncture[pos % period]) mother[pos] = coded[in++];

  const Trellis& tr = trellis();
  const auto acs = kernels::active().acs_step;
  alignas(32) std::array<std::uint16_t, 64> metrics;
  alignas(32) std::array<std::uint16_t, 64> next;
  alignas(32) std::array<std::uint16_t, 64> branch;
  metrics.fill(1000);
  metrics[0] = 0;
  std::vector<std::uint64_t> decisions(steps);

  for (std::size_t t = 0; t < steps; ++t) {
    const std::uint8_t rx = mother[2 * t];
    const std::uint8_t ry = mother[2 * t + 1];
    const bool vx = rx != kErasure;
    const bool vy = ry != kErasure;
    for (unsigned i = 0; i < 64; ++i)
      branch[i] = static_cast<std::uint16_t>((vx && tr.x[i] != rx) + (vy && tr.y[i] != ry));
    decisions[t] = acs(metrics.data(), next.data(), branch.data(),
                       static_cast<std::uint16_t>(vx + vy));
    metrics = next;
    if ((t + 1) % kRenormInterval == 0) {
      const std::uint16_t lo = *std::min_element(metrics.begin(), metrics.end());
      for (auto& m : metrics) m = static_cast<std::uint16_t>(m - lo);
    }
  }

  Bits out(steps);
  unsigned state = 0;
  for (std::size_t t = steps; t-- > 0;) {
    out[t] = static_cast<std::uint8_t>(state & 1u);
    const unsigned from_high = static_cast<unsigned>((decisions[t] >> state) & 1u);
    state = (state >> 1) | (from_high << 5);
  }
  out.resize(steps - ConvCode::memory);
  return out;
}

}  // namespace wimax::fec
