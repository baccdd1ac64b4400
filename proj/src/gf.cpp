#include "wimax/gf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace wimax::gf {

Field::Field(unsigned m, std::uint32_t primitive_poly) : m_(m), poly_(primitive_poly) {
  if (m < 2 || m > 16) throw std::invalid_argument("GF(2^m): m must be in [2, 16]");
  if (std::bit_width(primitive_poly) != m + 1)
    throw std::invalid_argument("GF(2^m): polynomial degree must equal m");
  order_ = (1u << m) - 1;
  exp_.assign(2 * std::size_t{order_}, 0);
  log_.assign(std::size_t{1} << m, 0);

  std::uint32_t x = 1;
  for (unsigned i = 0; i < order_; ++i) {
    if (i > 0 && x == 1)
      throw std::invalid_argument("GF(2^m): polynomial 0x" + std::to_string(primitive_poly) +
                                  " is not primitive");
    exp_[i] = static_cast<Symbol>(x);
    log_[x] = i;
    x <<= 1;
    if (x & (1u << m)) x ^= primitive_poly;
  }
  if (x != 1) throw std::invalid_argument("GF(2^m): polynomial is not primitive");
  for (unsigned i = order_; i < 2 * order_; ++i) exp_[i] = exp_[i - order_];
}

const Field& Field::gf16() {
  static const Field f(4, 0x13);
  return f;
}

const Field& Field::gf256() {
  static const Field f(8, 0x11D);
  return f;
}

Symbol Field::div(Symbol a, Symbol b) const {
  if (b == 0) throw std::domain_error("GF division by zero");
  if (a == 0) return 0;
  return exp_[log_[a] + order_ - log_[b]];
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw std::domain_error("GF inverse of zero");
  return exp_[(order_ - log_[a]) % order_];
}

Symbol Field::pow(Symbol a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("GF: negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long r = (static_cast<long long>(log_[a]) * (e % order_)) % order_;
  if (r < 0) r += order_;
  return exp_[static_cast<std::size_t>(r)];
}

Symbol Field::alpha_pow(long long e) const noexcept {
  long long r = e % static_cast<long long>(order_);
  if (r < 0) r += order_;
  return exp_[static_cast<std::size_t>(r)];
}

unsigned Field::log(Symbol a) const {
  if (a == 0 || a >= size()) throw std::domain_error("GF: log of zero or out-of-range value");
  return log_[a];
}

// ---------------------------------------------------------------------------

Element::Element(const Field& field, unsigned value) : field_(&field) {
  if (!field.contains(value)) throw std::invalid_argument("GF element out of range");
  value_ = static_cast<Symbol>(value);
}

namespace {
void require_same(const Field& a, const Field& b) {
  if (!(a == b)) throw std::invalid_argument("GF field mismatch");
}
}  // namespace

Element operator+(const Element& a, const Element& b) {
  require_same(*a.field_, *b.field_);
  return Element(*a.field_, a.field_->add(a.value_, b.value_));
}

Element operator*(const Element& a, const Element& b) {
  require_same(*a.field_, *b.field_);
  return Element(*a.field_, a.field_->mul(a.value_, b.value_));
}

Element operator/(const Element& a, const Element& b) {
  require_same(*a.field_, *b.field_);
  return Element(*a.field_, a.field_->div(a.value_, b.value_));
}

Element add(const Element& a, const Element& b) { return a + b; }
Element mul(const Element& a, const Element& b) { return a * b; }
Element inv(const Element& a) { return Element(a.field(), a.field().inv(a.value())); }

// ---------------------------------------------------------------------------

Poly::Poly(const Field& field, std::vector<Symbol> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
  for (Symbol c : coeffs_)
    if (!field.contains(c)) throw std::invalid_argument("GF polynomial coefficient out of range");
  trim();
}

Poly Poly::monomial(const Field& field, Symbol c, std::size_t power) {
  std::vector<Symbol> v(power + 1, 0);
  v[power] = c;
  return Poly(field, std::move(v));
}

void Poly::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Symbol Poly::eval(Symbol x) const noexcept {
  Symbol acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = field_->add(field_->mul(acc, x), *it);
  return acc;
}

Element Poly::eval(const Element& x) const {
  require_same(*field_, x.field());
  return Element(*field_, eval(x.value()));
}

Poly Poly::scaled(Symbol c) const {
  Poly out(*field_);
  if (c == 0) return out;
  out.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_->mul(coeffs_[i], c);
  return out;
}

Poly Poly::shifted(std::size_t k) const {
  Poly out(*field_);
  if (is_zero()) return out;
  out.coeffs_.assign(k, 0);
  out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

Poly Poly::truncated(std::size_t k) const {
  Poly out(*field_);
  out.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + std::min(k, coeffs_.size()));
  out.trim();
  return out;
}

Poly Poly::derivative() const {
  Poly out(*field_);
  if (coeffs_.size() < 2) return out;
  out.coeffs_.assign(coeffs_.size() - 1, 0);
  for (std::size_t i = 1; i < coeffs_.size(); i += 2) out.coeffs_[i - 1] = coeffs_[i];
  out.trim();
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same(*a.field_, *b.field_);
  Poly out(*a.field_);
  out.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = a[i] ^ b[i];
  out.trim();
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same(*a.field_, *b.field_);
  Poly out(*a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  const Field& f = *a.field_;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] ^= f.mul(a.coeffs_[i], b.coeffs_[j]);
  }
  out.trim();
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
Symbol poly_eval(const Poly& p, Symbol x) noexcept { return p.eval(x); }

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  require_same(a.field(), b.field());
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& f = a.field();
  if (a.is_zero() || *a.degree() < *b.degree()) return {Poly(f), a};

  const std::size_t db = *b.degree();
  std::vector<Symbol> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<Symbol> quo(rem.size() - db, 0);
  const Symbol lead_inv = f.inv(b.leading());
  for (std::size_t i = rem.size(); i-- > db;) {
    const Symbol c = rem[i];
    if (c == 0) continue;
    const Symbol q = f.mul(c, lead_inv);
    quo[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] ^= f.mul(q, b[j]);
  }
  rem.resize(db);
  return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
  require_same(a.field(), b.field());
  while (!b.is_zero()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(a.field().inv(a.leading()));
}

}  // namespace wimax::gf
