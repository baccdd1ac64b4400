#pragma once

namespace wimax::fec::detail {

// 7-bit reversal: the encoder register keeps the newest input in bit 0,
// while octal generators list the tap on the newest input first.
constexpr unsigned reverse7(unsigned g) noexcept {
  unsigned r = 0;
  for (unsigned i = 0; i < 7; ++i)
    if (g & (1u << i)) r |= 1u << (6 - i);
  return r;
}

inline constexpr unsigned kTapsX = reverse7(0171);
inline constexpr unsigned kTapsY = reverse7(0133);
static_assert((kTapsX & 0x40) && (kTapsY & 0x40), "both generators must tap the oldest bit");

}  // namespace wimax::fec::detail
