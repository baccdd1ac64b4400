#include <cctype>
#include <charconv>
#include <stdexcept>

#include "wimax/secmac.hpp"

namespace wimax::secmac {

namespace {

void check_mac_bits(unsigned mac_bits) {
  if (mac_bits < kMinMacBits || mac_bits > kMaxMacBits)
    throw std::invalid_argument("MAC length must be between 16 and 64 bits");
}

// Fixed-duration equality.
bool blocks_equal(Block a, Block b) noexcept {
  volatile Block diff = a ^ b;
  return diff == 0;
}

// Payload from padded blocks without validating anything beyond bounds.
std::vector<std::uint8_t> best_effort_payload(std::span<const Block> padded) {
  auto bytes = to_bytes(padded.first(padded.size() - 1));
  const std::uint64_t bits = padded.back();
  if (bits % 8 == 0 && bits / 8 < bytes.size()) bytes.resize(bits / 8);
  return bytes;
}

}  // namespace

std::vector<Block> pad(std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> bytes(payload.begin(), payload.end());
  bytes.push_back(0x80);
  while (bytes.size() % 8 != 0) bytes.push_back(0x00);
  auto blocks = to_blocks(bytes);
  blocks.push_back(static_cast<Block>(payload.size()) * 8);
  return blocks;
}

std::optional<std::vector<std::uint8_t>> unpad(std::span<const Block> blocks) {
  if (blocks.size() < 2) return std::nullopt;
  const std::uint64_t bits = blocks.back();
  if (bits % 8 != 0) return std::nullopt;
  const std::uint64_t len = bits / 8;
  if ((len + 1 + 7) / 8 != blocks.size() - 1) return std::nullopt;
  auto bytes = to_bytes(blocks.first(blocks.size() - 1));
  if (bytes[len] != 0x80) return std::nullopt;
  for (std::size_t i = len + 1; i < bytes.size(); ++i)
    if (bytes[i] != 0) return std::nullopt;
  bytes.resize(len);
  return bytes;
}

SecuredFrame seal_frame(std::span<const std::uint8_t> payload, const BlockCipher& enc_key,
                        const BlockCipher& mac_key, Block iv, unsigned mac_bits) {
  if (payload.empty()) throw std::invalid_argument("payload must not be empty");
  check_mac_bits(mac_bits);
  if (enc_key.key_fingerprint() == mac_key.key_fingerprint())
    throw std::invalid_argument("encryption and MAC keys must differ");
  auto plain = pad(payload);
  plain.push_back(tag_block(compute_dac(plain, mac_key, mac_bits), mac_bits));
  return {iv, cbc_encrypt(plain, enc_key, iv)};
}

OpenResult open_frame(const SecuredFrame& frame, const BlockCipher& enc_key, const BlockCipher& mac_key,
                      unsigned mac_bits) {
  check_mac_bits(mac_bits);
  OpenResult result;
  // Padded plaintext needs at least two blocks, plus the tag block.
  if (frame.ciphertext.size() < 3) return result;
  const auto plain = cbc_decrypt(frame.ciphertext, enc_key, frame.iv);
  const std::span<const Block> padded(plain.data(), plain.size() - 1);
  result.recovered = best_effort_payload(padded);

  const Block expected = tag_block(compute_dac(padded, mac_key, mac_bits), mac_bits);
  if (!blocks_equal(expected, plain.back())) return result;

  auto payload = unpad(padded);
  if (!payload) {
    result.status = OpenStatus::padding_error;
    return result;
  }
  result.status = OpenStatus::ok;
  result.payload = std::move(*payload);
  return result;
}

std::vector<std::uint8_t> serialize(const SecuredFrame& frame) {
  if (frame.ciphertext.size() > 0xFFFF) throw std::invalid_argument("frame too long for the block count field");
  std::vector<std::uint8_t> out;
  out.reserve(10 + 8 * frame.ciphertext.size());
  out.push_back(static_cast<std::uint8_t>(frame.ciphertext.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(frame.ciphertext.size()));
  const Block iv[] = {frame.iv};
  const auto iv_bytes = to_bytes(iv);
  out.insert(out.end(), iv_bytes.begin(), iv_bytes.end());
  const auto body = to_bytes(frame.ciphertext);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::optional<SecuredFrame> parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 10) return std::nullopt;
  const std::size_t n = (std::size_t{bytes[0]} << 8) | bytes[1];
  if (n == 0 || bytes.size() < 10 + 8 * n) return std::nullopt;
  SecuredFrame frame;
  frame.iv = to_blocks(bytes.subspan(2, 8)).front();
  frame.ciphertext = to_blocks(bytes.subspan(10, 8 * n));
  return frame;
}

OpenResult open_wire(std::span<const std::uint8_t> bytes, const BlockCipher& enc_key,
                     const BlockCipher& mac_key, unsigned mac_bits) {
  const auto frame = parse(bytes);
  if (!frame) {
    check_mac_bits(mac_bits);
    return {};
  }
  return open_frame(*frame, enc_key, mac_key, mac_bits);
}

std::size_t sealed_size(std::size_t payload_bytes) noexcept {
  const std::size_t blocks = (payload_bytes + 1 + 7) / 8 + 2;
  return 10 + 8 * blocks;
}

std::uint64_t parse_hex_key(std::string_view hex) {
  if (hex.size() != 16) throw std::invalid_argument("key must be 16 hex digits");
  for (char ch : hex)
    if (!std::isxdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("key must be 16 hex digits");
  std::uint64_t key = 0;
  std::from_chars(hex.data(), hex.data() + hex.size(), key, 16);
  return key;
}

FrameSealer::FrameSealer(std::uint64_t enc_key, std::uint64_t mac_key, unsigned mac_bits)
    : enc_(enc_key), mac_(mac_key), mac_bits_(mac_bits) {
  check_mac_bits(mac_bits);
  if (enc_.key_fingerprint() == mac_.key_fingerprint())
    throw std::invalid_argument("encryption and MAC keys must differ");
}

std::vector<std::uint8_t> FrameSealer::seal(std::span<const std::uint8_t> payload, Block iv) const {
  return serialize(seal_frame(payload, enc_, mac_, iv, mac_bits_));
}

OpenResult FrameSealer::open(std::span<const std::uint8_t> wire) const {
  return open_wire(wire, enc_, mac_, mac_bits_);
}

}  // namespace wimax::secmac
