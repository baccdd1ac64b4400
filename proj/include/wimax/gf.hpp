#pragma once

// Arithmetic over GF(2^m) and polynomials with coefficients in GF(2^m).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wimax::gf {

using Symbol = std::uint16_t;

/// Binary extension field GF(2^m) backed by exp/log tables.
///
/// The defining polynomial is given as a bitmask including the x^m term,
/// e.g. 0x13 for x^4 + x + 1. Construction rejects polynomials that are not
/// of degree m or whose root does not generate the full multiplicative group.
/// Tables are immutable once built, so a Field can be shared across threads.
class Field {
 public:
  Field(unsigned m, std::uint32_t primitive_poly);

  /// GF(16) with x^4 + x + 1.
  static const Field& gf16();
  /// GF(256) with x^8 + x^4 + x^3 + x^2 + 1.
  static const Field& gf256();

  unsigned m() const noexcept { return m_; }
  std::uint32_t primitive_poly() const noexcept { return poly_; }
  /// Number of elements, 2^m.
  std::size_t size() const noexcept { return std::size_t{1} << m_; }
  /// Order of the multiplicative group, 2^m - 1.
  unsigned order() const noexcept { return order_; }
  bool contains(unsigned v) const noexcept { return v < size(); }

  Symbol add(Symbol a, Symbol b) const noexcept { return static_cast<Symbol>(a ^ b); }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws std::domain_error when b == 0.
  Symbol div(Symbol a, Symbol b) const;
  /// Throws std::domain_error when a == 0.
  Symbol inv(Symbol a) const;
  /// a^e for any integer e; 0^0 is 1, 0^e for e > 0 is 0, 0^e for e < 0 throws.
  Symbol pow(Symbol a, long long e) const;
  /// alpha^e with e reduced modulo the group order (negative e allowed).
  Symbol alpha_pow(long long e) const noexcept;
  /// Discrete log base alpha; throws std::domain_error for 0.
  unsigned log(Symbol a) const;

  /// Two fields are equal when they have the same degree and polynomial.
  bool operator==(const Field& other) const noexcept {
    return m_ == other.m_ && poly_ == other.poly_;
  }

 private:
  unsigned m_;
  std::uint32_t poly_;
  unsigned order_;
  std::vector<Symbol> exp_;  // length 2*order so mul never has to reduce
  std::vector<unsigned> log_;
};

/// A field element that remembers which field it belongs to. Mixed-field
/// arithmetic throws std::invalid_argument.
class Element {
 public:
  Element(const Field& field, unsigned value);

  const Field& field() const noexcept { return *field_; }
  Symbol value() const noexcept { return value_; }

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator/(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b) {
    return *a.field_ == *b.field_ && a.value_ == b.value_;
  }

 private:
  const Field* field_;
  Symbol value_;
};

Element add(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element inv(const Element& a);

/// Polynomial over GF(2^m); coefficient i multiplies x^i.
///
/// Always kept canonical: trailing (high-order) zero coefficients are dropped,
/// so the zero polynomial has no coefficients and no degree.
class Poly {
 public:
  explicit Poly(const Field& field) : field_(&field) {}
  Poly(const Field& field, std::vector<Symbol> coeffs);
  Poly(const Field& field, std::initializer_list<Symbol> coeffs)
      : Poly(field, std::vector<Symbol>(coeffs)) {}

  /// c * x^power.
  static Poly monomial(const Field& field, Symbol c, std::size_t power);

  const Field& field() const noexcept { return *field_; }
  /// Empty for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of x^i (0 beyond the degree).
  Symbol operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : Symbol{0};
  }
  std::span<const Symbol> coeffs() const noexcept { return coeffs_; }
  Symbol leading() const noexcept { return coeffs_.empty() ? Symbol{0} : coeffs_.back(); }

  /// Horner evaluation.
  Symbol eval(Symbol x) const noexcept;
  Element eval(const Element& x) const;

  Poly scaled(Symbol c) const;
  /// Multiply by x^k.
  Poly shifted(std::size_t k) const;
  /// Keep only terms of degree < k (reduction modulo x^k).
  Poly truncated(std::size_t k) const;
  /// Formal derivative; in characteristic 2 only odd-power terms survive.
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() noexcept;

  const Field* field_;
  std::vector<Symbol> coeffs_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Returns (q, r) with a = q*b + r and deg r < deg b. Throws
/// std::domain_error when b is the zero polynomial.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
/// Monic greatest common divisor (zero if both inputs are zero).
Poly poly_gcd(Poly a, Poly b);
Symbol poly_eval(const Poly& p, Symbol x) noexcept;

}  // namespace wimax::gf
