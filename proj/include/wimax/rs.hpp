#pragma once

// Systematic Reed-Solomon codec with a syndrome / Euclid / Chien / Forney
// decoder.
//
// Codeword layout: index j of an n-symbol word carries the coefficient of
// x^(n-1-j), so the k message symbols come first (high-order terms) and the
// 2t parity symbols last. Error locations are reported as exponents
// (X = alpha^location). A shortened code is the same generator with a smaller
// n: the dropped leading symbols are implicit zeros at the top exponents.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wimax/gf.hpp"

namespace wimax::rs {

using gf::Symbol;

/// S_1..S_2t, stored s[i-1] = S_i.
struct Syndromes {
  std::vector<Symbol> s;
  bool all_zero() const noexcept;
};

/// Error locator sigma(x) and evaluator omega(x) of the key equation
/// sigma(x) S(x) = omega(x) mod x^2t, with S(x) = sum S_i x^(i-1).
struct ErrorLocator {
  gf::Poly sigma;
  gf::Poly omega;
};

struct ErrorPattern {
  std::vector<unsigned> locations;  // exponents, distinct
  std::vector<Symbol> magnitudes;   // same length as locations
};

struct Decoded {
  std::vector<Symbol> message;
  std::size_t corrected = 0;
};

class Code {
 public:
  /// Narrow-sense code with generator roots alpha^1..alpha^(n-k).
  /// Requires n <= 2^m - 1, 0 < k < n and n - k even.
  Code(const gf::Field& field, unsigned n, unsigned k);

  /// RS(255, 239), t = 8 over GF(256).
  static Code rs255_239();

  const gf::Field& field() const noexcept { return *field_; }
  unsigned n() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  unsigned t() const noexcept { return (n_ - k_) / 2; }
  const gf::Poly& generator() const noexcept { return generator_; }

  /// Same generator, `drop` fewer leading message symbols (drop < k).
  Code shortened(unsigned drop) const;

  /// Systematic encoding: message followed by the remainder of
  /// x^2t m(x) mod g(x). Throws std::invalid_argument on wrong length.
  std::vector<Symbol> encode(std::span<const Symbol> message) const;

  /// S_i = r(alpha^i), i = 1..2t. Throws std::invalid_argument on wrong length.
  Syndromes syndromes(std::span<const Symbol> received) const;

  /// Extended Euclid on (x^2t, S(x)), stopped once deg(remainder) < t, then
  /// normalized so sigma(0) = 1. All-zero syndromes give sigma = 1, omega = 0.
  /// If sigma(0) turns out to be zero the unnormalized pair is returned and
  /// find_errors reports the failure.
  ErrorLocator solve_key_equation(const Syndromes& syn) const;

  /// Chien scan over exponents 0..n-1 plus Forney magnitudes
  /// Y = omega(X^-1) / sigma'(X^-1). Empty when the locator is inconsistent
  /// with at most t correctable errors inside the codeword.
  std::optional<ErrorPattern> find_errors(const ErrorLocator& loc) const;

  /// Full decode. Empty on decoder failure (more than t errors detected).
  std::optional<Decoded> decode(std::span<const Symbol> received) const;

  /// Position in the codeword vector of exponent `location`.
  std::size_t index_of(unsigned location) const noexcept { return n_ - 1 - location; }

 private:
  const gf::Field* field_;
  unsigned n_;
  unsigned k_;
  gf::Poly generator_;
  std::vector<Symbol> gen_high_first_;  // g_2t (=1), g_2t-1, ..., g_0
};

// Free-function spellings of the codec operations.
inline std::vector<Symbol> rs_encode(std::span<const Symbol> message, const Code& code) {
  return code.encode(message);
}
inline std::optional<Decoded> rs_decode(std::span<const Symbol> received, const Code& code) {
  return code.decode(received);
}
inline Code rs_shorten(const Code& code, unsigned drop) { return code.shortened(drop); }

/// Byte-oriented wrappers for GF(256) codes.
std::vector<std::uint8_t> encode_bytes(const Code& code, std::span<const std::uint8_t> message);
std::optional<Decoded> decode_bytes(const Code& code, std::span<const std::uint8_t> received);

}  // namespace wimax::rs
