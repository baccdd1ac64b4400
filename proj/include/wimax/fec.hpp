#pragma once

// Concatenated outer Reed-Solomon / inner convolutional FEC with the
// two-step OFDM bit interleaver and the burst-profile (rate ID) table.
//
// One FEC block fills a whole number of OFDM symbols:
//   k payload bytes -> randomize -> RS(n, k) over GF(256) -> zero tail bytes
//   up to the block size (at least one, which flushes the encoder) -> K=7
//   rate-1/2 code -> puncture -> interleave each 192 * bpp bit symbol.
// Bits travel one per byte (0 or 1); the Viterbi input also accepts
// kErasure for positions with no information.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wimax/rs.hpp"

namespace wimax::fec {

using Bits = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kErasure = 2;
inline constexpr unsigned kDataCarriers = 192;

enum class Modulation : unsigned { qam16 = 16, qam32 = 32, qam64 = 64 };

constexpr unsigned bits_per_point(Modulation m) noexcept {
  switch (m) {
    case Modulation::qam16: return 4;
    case Modulation::qam32: return 5;
    case Modulation::qam64: return 6;
  }
  return 0;
}

enum class CcRate { r1_2, r2_3, r3_4 };

/// K = 7 convolutional code, generators 171 / 133 octal, with a puncturing
/// pattern over the mother-code output X1 Y1 X2 Y2 ... (1 = transmitted).
struct ConvCode {
  static constexpr unsigned constraint_length = 7;
  static constexpr unsigned memory = constraint_length - 1;
  static constexpr unsigned g1 = 0171;
  static constexpr unsigned g2 = 0133;
  CcRate rate = CcRate::r1_2;
  std::vector<std::uint8_t> puncture{1, 1};

  static ConvCode make(CcRate rate);
  /// Length of the punctured output for `input_bits` encoder inputs.
  std::size_t punctured_length(std::size_t input_bits) const noexcept;
  std::string rate_label() const;
};

struct BurstProfile {
  unsigned rate_id;
  Modulation modulation;
  unsigned rs_n;
  unsigned rs_k;
  CcRate cc_rate;
  unsigned symbols_per_block = 1;

  unsigned bits_per_point() const noexcept { return fec::bits_per_point(modulation); }
  unsigned coded_bits_per_symbol() const noexcept { return kDataCarriers * bits_per_point(); }
  unsigned coded_bits_per_block() const noexcept { return symbols_per_block * coded_bits_per_symbol(); }
  /// Zero bytes after the RS codeword; at least one.
  unsigned tail_bytes() const noexcept;
  /// Payload bytes in one FEC block.
  unsigned bytes_per_block() const noexcept { return rs_k; }
  /// Payload carried by one OFDM symbol on average.
  double bytes_per_ofdm_symbol() const noexcept { return static_cast<double>(rs_k) / symbols_per_block; }
  /// Information bits per coded (constellation) bit.
  double code_rate() const noexcept {
    return 8.0 * rs_k / static_cast<double>(coded_bits_per_block());
  }
  rs::Code rs_code() const;
  ConvCode conv_code() const { return ConvCode::make(cc_rate); }
};

/// The fixed profile table, indexed by rate_id.
std::span<const BurstProfile> profiles() noexcept;
/// Throws std::out_of_range for unknown IDs.
const BurstProfile& profile(unsigned rate_id);
/// Aligned text table of all profiles.
std::string format_profile_table();

// --- randomizer -------------------------------------------------------------

/// Initial register for the x^15 + x^14 + 1 scrambler: 100101010000000.
inline constexpr std::uint16_t kRandomizerSeed = 0x00A9;

/// XOR with the additive PRBS x^15 + x^14 + 1 (applying it twice restores
/// the input). Bits are 0/1 values.
Bits randomize(std::span<const std::uint8_t> bits, std::uint16_t seed = kRandomizerSeed);
std::vector<std::uint8_t> randomize_bytes(std::span<const std::uint8_t> bytes,
                                          std::uint16_t seed = kRandomizerSeed);

// --- convolutional code ------------------------------------------------------

/// Rate-1/2 mother code then puncturing. The caller supplies the 6 zero tail
/// bits as part of `bits`.
Bits conv_encode(std::span<const std::uint8_t> bits, const ConvCode& cc);

/// Hard-decision Viterbi decoder over the 64-state trellis, starting and
/// ending in state 0. Punctured positions and kErasure inputs add nothing to
/// the metric. Returns the input estimate without the 6 tail bits. Throws
/// std::invalid_argument when the length matches no encoder input length.
Bits viterbi_decode(std::span<const std::uint8_t> coded, const ConvCode& cc);

// --- interleaver --------------------------------------------------------------

/// Output position of input bit k for one OFDM symbol of 192 * bpp bits.
std::vector<std::size_t> interleaver_map(unsigned bits_per_point);
/// Throws std::invalid_argument unless bits.size() == 192 * bpp.
Bits interleave(std::span<const std::uint8_t> bits, unsigned bits_per_point);
Bits deinterleave(std::span<const std::uint8_t> bits, unsigned bits_per_point);

// --- full chain -----------------------------------------------------------------

/// Payload is zero-padded to a whole number of blocks (at least one).
Bits fec_encode(std::span<const std::uint8_t> frame, const BurstProfile& profile);

struct FecResult {
  std::vector<std::uint8_t> bytes;  // blocks * k bytes, padding included
  std::size_t blocks = 0;
  std::size_t failed_blocks = 0;  // RS decoder failures (uncorrected bytes passed through)
  std::size_t corrected_symbols = 0;
  bool ok() const noexcept { return failed_blocks == 0; }
};

/// Input must be a whole number of coded blocks (coded_bits_per_block each).
FecResult fec_decode(std::span<const std::uint8_t> coded, const BurstProfile& profile);

// --- bit helpers --------------------------------------------------------------

/// MSB-first expansion of bytes into 0/1 values.
Bits unpack_bits(std::span<const std::uint8_t> bytes);
/// Inverse of unpack_bits; size must be a multiple of 8.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);

}  // namespace wimax::fec
