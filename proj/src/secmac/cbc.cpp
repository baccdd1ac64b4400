#include <stdexcept>

#include "wimax/secmac.hpp"

namespace wimax::secmac {

std::vector<Block> cbc_encrypt(std::span<const Block> plain, const BlockCipher& cipher, Block iv) {
  std::vector<Block> out(plain.size());
  Block prev = iv;
  for (std::size_t j = 0; j < plain.size(); ++j) prev = out[j] = cipher.encrypt(prev ^ plain[j]);
  return out;
}

std::vector<Block> cbc_decrypt(std::span<const Block> cipher_blocks, const BlockCipher& cipher, Block iv) {
  std::vector<Block> out(cipher_blocks.size());
  Block prev = iv;
  for (std::size_t j = 0; j < cipher_blocks.size(); ++j) {
    out[j] = prev ^ cipher.decrypt(cipher_blocks[j]);
    prev = cipher_blocks[j];
  }
  return out;
}

std::vector<Block> to_blocks(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 8 != 0) throw std::invalid_argument("input is not a whole number of 64-bit blocks");
  std::vector<Block> out(bytes.size() / 8);
  for (std::size_t i = 0; i < bytes.size(); ++i) out[i / 8] = (out[i / 8] << 8) | bytes[i];
  return out;
}

std::vector<std::uint8_t> to_bytes(std::span<const Block> blocks) {
  std::vector<std::uint8_t> out;
  out.reserve(blocks.size() * 8);
  for (Block b : blocks)
    for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(b >> s));
  return out;
}

std::uint64_t compute_dac(std::span<const Block> data, const BlockCipher& cipher, unsigned mac_bits) {
  if (mac_bits < kMinMacBits || mac_bits > kMaxMacBits)
    throw std::invalid_argument("MAC length must be between 16 and 64 bits");
  if (data.empty()) throw std::invalid_argument("DAC needs at least one block");
  Block o = 0;
  for (Block d : data) o = cipher.encrypt(d ^ o);
  return o >> (64 - mac_bits);
}

Block tag_block(std::uint64_t tag, unsigned mac_bits) {
  return mac_bits == 64 ? tag : tag << (64 - mac_bits);
}

}  // namespace wimax::secmac
