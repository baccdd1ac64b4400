#include <algorithm>
#include <stdexcept>

#include "wimax/fec.hpp"

namespace wimax::fec {

Bits fec_encode(std::span<const std::uint8_t> frame, const BurstProfile& profile) {
  const std::size_t k = profile.rs_k;
  const std::size_t blocks = std::max<std::size_t>(1, (frame.size() + k - 1) / k);
  const rs::Code code = profile.rs_code();
  const ConvCode cc = profile.conv_code();
  const unsigned bpp = profile.bits_per_point();

  Bits out;
  out.reserve(blocks * profile.coded_bits_per_block());
  std::vector<std::uint8_t> chunk(k);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::fill(chunk.begin(), chunk.end(), 0);
    const std::size_t begin = b * k;
    if (begin < frame.size())
      std::copy_n(frame.begin() + begin, std::min(k, frame.size() - begin), chunk.begin());

    auto codeword = rs::encode_bytes(code, randomize_bytes(chunk));
    codeword.resize(codeword.size() + profile.tail_bytes(), 0x00);  // flushes the convolutional encoder
    const Bits coded = conv_encode(unpack_bits(codeword), cc);
    const std::size_t sym = profile.coded_bits_per_symbol();
    for (std::size_t off = 0; off < coded.size(); off += sym) {
      const Bits part = interleave(std::span(coded).subspan(off, sym), bpp);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

FecResult fec_decode(std::span<const std::uint8_t> coded, const BurstProfile& profile) {
  const std::size_t block_bits = profile.coded_bits_per_block();
  const std::size_t sym = profile.coded_bits_per_symbol();
  if (coded.empty() || coded.size() % block_bits != 0)
    throw std::invalid_argument("fec_decode: input is not a whole number of coded blocks");
  const rs::Code code = profile.rs_code();
  const ConvCode cc = profile.conv_code();
  const unsigned bpp = profile.bits_per_point();
  const std::size_t n = profile.rs_n;

  FecResult result;
  result.blocks = coded.size() / block_bits;
  result.bytes.reserve(result.blocks * profile.rs_k);
  for (std::size_t b = 0; b < result.blocks; ++b) {
    const auto block = coded.subspan(b * block_bits, block_bits);
    Bits coded_block;
    coded_block.reserve(block_bits);
    for (std::size_t off = 0; off < block_bits; off += sym) {
      const Bits part = deinterleave(block.subspan(off, sym), bpp);
      coded_block.insert(coded_block.end(), part.begin(), part.end());
    }
    Bits decoded = viterbi_decode(coded_block, cc);
    decoded.resize(8 * n);  // drop what is left of the tail
    const auto word = pack_bits(decoded);

    std::vector<std::uint8_t> message;
    if (auto d = rs::decode_bytes(code, word)) {
      message.assign(d->message.begin(), d->message.end());
      result.corrected_symbols += d->corrected;
    } else {
      message.assign(word.begin(), word.begin() + profile.rs_k);
      ++result.failed_blocks;
    }
    const auto plain = randomize_bytes(message);
    result.bytes.insert(result.bytes.end(), plain.begin(), plain.end());
  }
  return result;
}

}  // namespace wimax::fec
