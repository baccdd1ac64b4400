#pragma once

// DES, CBC mode, the CBC-MAC data authentication code, and the sealed
// frame (MAC over the padded plaintext, then CBC encryption of plaintext
// and tag block).
//
// Wire layout, big-endian:
//   [2 bytes: block count N] [8 bytes: IV] [N x 8 bytes: ciphertext]
// where the last ciphertext block carries the encrypted tag block.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wimax::secmac {

using Block = std::uint64_t;

class BlockCipher {
 public:
  virtual ~BlockCipher() = default;
  virtual Block encrypt(Block x) const = 0;
  virtual Block decrypt(Block x) const = 0;
  virtual std::string_view name() const = 0;
  static constexpr unsigned block_bits = 64;
  /// Two ciphers with equal fingerprints use the same effective key.
  virtual std::uint64_t key_fingerprint() const = 0;
};

/// FIPS 46-3 DES. Parity bits of the key are ignored.
class Des final : public BlockCipher {
 public:
  explicit Des(std::uint64_t key);
  /// Throws std::invalid_argument unless exactly 8 bytes are given.
  static Des from_bytes(std::span<const std::uint8_t> key);

  Block encrypt(Block x) const override;
  Block decrypt(Block x) const override;
  std::string_view name() const override { return "DES"; }
  std::uint64_t key_fingerprint() const override { return key_ & 0xFEFEFEFEFEFEFEFEull; }

 private:
  Block crypt(Block x, bool decrypt) const;
  std::uint64_t key_;
  std::array<std::uint64_t, 16> subkeys_{};  // 8 six-bit groups, MSB group first
};

Block des_encrypt_block(std::uint64_t key, Block x);
Block des_decrypt_block(std::uint64_t key, Block x);

/// C_j = E(C_{j-1} xor P_j), C_0 = IV.
std::vector<Block> cbc_encrypt(std::span<const Block> plain, const BlockCipher& cipher, Block iv);
/// P_j = C_{j-1} xor D(C_j), C_0 = IV.
std::vector<Block> cbc_decrypt(std::span<const Block> cipher_blocks, const BlockCipher& cipher, Block iv);

/// Big-endian byte/block conversion; throws std::invalid_argument when the
/// byte count is not a multiple of 8.
std::vector<Block> to_blocks(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> to_bytes(std::span<const Block> blocks);

inline constexpr unsigned kMinMacBits = 16;
inline constexpr unsigned kMaxMacBits = 64;
inline constexpr unsigned kDefaultMacBits = 32;

/// O_1 = E(D_1), O_j = E(D_j xor O_{j-1}); returns the leftmost M bits of
/// O_N, right-aligned. Throws std::invalid_argument for M outside 16..64 or
/// empty data.
std::uint64_t compute_dac(std::span<const Block> data, const BlockCipher& cipher, unsigned mac_bits);
/// The tag as it sits in the frame: its M bits at the top of a block.
Block tag_block(std::uint64_t tag, unsigned mac_bits);

/// payload || 0x80 || 0x00... to a block boundary, then one block holding
/// the payload length in bits.
std::vector<Block> pad(std::span<const std::uint8_t> payload);
/// Inverse of pad; std::nullopt when the padding is malformed.
std::optional<std::vector<std::uint8_t>> unpad(std::span<const Block> blocks);

struct SecuredFrame {
  Block iv = 0;
  std::vector<Block> ciphertext;  // padded plaintext blocks, then the tag block
};

enum class OpenStatus { ok, auth_failure, padding_error };

struct OpenResult {
  OpenStatus status = OpenStatus::auth_failure;
  std::vector<std::uint8_t> payload;  // only when status == ok
  /// Decrypted payload bytes by a best-effort read of the padding, kept
  /// regardless of status for error accounting.
  std::vector<std::uint8_t> recovered;
  bool ok() const noexcept { return status == OpenStatus::ok; }
};

/// Throws std::invalid_argument for an empty payload, equal keys or M out of range.
SecuredFrame seal_frame(std::span<const std::uint8_t> payload, const BlockCipher& enc_key,
                        const BlockCipher& mac_key, Block iv, unsigned mac_bits = kDefaultMacBits);
/// Tag comparison takes the same time wherever the blocks differ. Padding
/// is inspected only after the tag verifies.
OpenResult open_frame(const SecuredFrame& frame, const BlockCipher& enc_key,
                      const BlockCipher& mac_key, unsigned mac_bits = kDefaultMacBits);

std::vector<std::uint8_t> serialize(const SecuredFrame& frame);
/// Reads one frame from the front of `bytes`; trailing bytes are ignored.
/// std::nullopt when the buffer is too short or declares zero blocks.
std::optional<SecuredFrame> parse(std::span<const std::uint8_t> bytes);
/// parse + open_frame; malformed input yields auth_failure.
OpenResult open_wire(std::span<const std::uint8_t> bytes, const BlockCipher& enc_key,
                     const BlockCipher& mac_key, unsigned mac_bits = kDefaultMacBits);

/// Serialized size of a sealed payload of `payload_bytes` bytes.
std::size_t sealed_size(std::size_t payload_bytes) noexcept;

/// Parses a 16-digit hex key. Throws std::invalid_argument otherwise.
std::uint64_t parse_hex_key(std::string_view hex);

/// Seals and opens with fixed keys and mac length. Immutable after
/// construction; safe for concurrent use.
class FrameSealer {
 public:
  FrameSealer(std::uint64_t enc_key, std::uint64_t mac_key, unsigned mac_bits = kDefaultMacBits);
  std::vector<std::uint8_t> seal(std::span<const std::uint8_t> payload, Block iv) const;
  OpenResult open(std::span<const std::uint8_t> wire) const;
  unsigned mac_bits() const noexcept { return mac_bits_; }

 private:
  Des enc_;
  Des mac_;
  unsigned mac_bits_;
};

}  // namespace wimax::secmac
