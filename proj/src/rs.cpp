#include "wimax/rs.hpp"

#include <algorithm>
#include <stdexcept>

namespace wimax::rs {

bool Syndromes::all_zero() const noexcept {
  return std::all_of(s.begin(), s.end(), [](Symbol v) { return v == 0; });
}

Code::Code(const gf::Field& field, unsigned n, unsigned k)
    : field_(&field), n_(n), k_(k), generator_(field, {1}) {
  if (n > field.order()) throw std::invalid_argument("RS: n exceeds 2^m - 1");
  if (k == 0 || k >= n) throw std::invalid_argument("RS: need 0 < k < n");
  if ((n - k) % 2 != 0) throw std::invalid_argument("RS: n - k must be even");

  for (unsigned i = 1; i <= n - k; ++i)
    generator_ = generator_ * gf::Poly(field, {field.alpha_pow(i), 1});

  const auto g = generator_.coeffs();
  gen_high_first_.assign(g.rbegin(), g.rend());
}

Code Code::rs255_239() { return Code(gf::Field::gf256(), 255, 239); }

Code Code::shortened(unsigned drop) const {
  if (drop >= k_) throw std::invalid_argument("RS: cannot shorten by k or more symbols");
  return Code(*field_, n_ - drop, k_ - drop);
}

std::vector<Symbol> Code::encode(std::span<const Symbol> message) const {
  if (message.size() != k_) throw std::invalid_argument("RS encode: message length must equal k");
  const gf::Field& f = *field_;
  const std::size_t np = n_ - k_;
  std::vector<Symbol> out(n_, 0);
  std::vector<Symbol> reg(np, 0);
  for (std::size_t j = 0; j < k_; ++j) {
    if (!f.contains(message[j])) throw std::invalid_argument("RS encode: symbol out of field");
    out[j] = message[j];
    const Symbol fb = f.add(message[j], reg[0]);
    for (std::size_t i = 0; i + 1 < np; ++i) reg[i] = f.add(reg[i + 1], f.mul(fb, gen_high_first_[i + 1]));
    reg[np - 1] = f.mul(fb, gen_high_first_[np]);
  }
  std::copy(reg.begin(), reg.end(), out.begin() + k_);
  return out;
}

Syndromes Code::syndromes(std::span<const Symbol> received) const {
  if (received.size() != n_) throw std::invalid_argument("RS syndromes: word length must equal n");
  const gf::Field& f = *field_;
  Syndromes syn;
  syn.s.resize(n_ - k_);
  for (unsigned i = 1; i <= n_ - k_; ++i) {
    const Symbol x = f.alpha_pow(i);
    Symbol acc = 0;
    for (Symbol r : received) acc = f.add(f.mul(acc, x), r);
    syn.s[i - 1] = acc;
  }
  return syn;
}

ErrorLocator Code::solve_key_equation(const Syndromes& syn) const {
  const gf::Field& f = *field_;
  const std::size_t two_t = n_ - k_;
  if (syn.s.size() != two_t) throw std::invalid_argument("RS: expected 2t syndromes");
  if (syn.all_zero()) return {gf::Poly(f, {1}), gf::Poly(f)};

  gf::Poly r_prev = gf::Poly::monomial(f, 1, two_t);
  gf::Poly r_cur(f, syn.s);
  gf::Poly t_prev(f);
  gf::Poly t_cur(f, {1});
  while (!r_cur.is_zero() && *r_cur.degree() >= t()) {
    auto [q, rem] = gf::poly_divmod(r_prev, r_cur);
    gf::Poly t_next = t_prev + q * t_cur;
    r_prev = std::move(r_cur);
    r_cur = std::move(rem);
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }

  const Symbol lambda = t_cur[0];
  if (lambda == 0) return {t_cur, r_cur};
  const Symbol norm = f.inv(lambda);
  return {t_cur.scaled(norm), r_cur.scaled(norm)};
}

std::optional<ErrorPattern> Code::find_errors(const ErrorLocator& loc) const {
  const gf::Field& f = *field_;
  const gf::Poly& sigma = loc.sigma;
  if (sigma.is_zero() || sigma[0] != 1) return std::nullopt;
  const std::size_t nu = *sigma.degree();
  ErrorPattern pat;
  if (nu == 0) return pat;
  if (nu > t()) return std::nullopt;

  const gf::Poly dsigma = sigma.derivative();
  for (unsigned k = 0; k < n_ && pat.locations.size() <= nu; ++k) {
    const Symbol xinv = f.alpha_pow(-static_cast<long long>(k));
    if (sigma.eval(xinv) != 0) continue;
    const Symbol den = dsigma.eval(xinv);
    if (den == 0) return std::nullopt;
    const Symbol y = f.div(loc.omega.eval(xinv), den);
    if (y == 0) return std::nullopt;
    pat.locations.push_back(k);
    pat.magnitudes.push_back(y);
  }
  if (pat.locations.size() != nu) return std::nullopt;
  return pat;
}

std::optional<Decoded> Code::decode(std::span<const Symbol> received) const {
  const Syndromes syn = syndromes(received);
  Decoded out{std::vector<Symbol>(received.begin(), received.begin() + k_), 0};
  if (syn.all_zero()) return out;

  const auto pattern = find_errors(solve_key_equation(syn));
  if (!pattern) return std::nullopt;

  std::vector<Symbol> word(received.begin(), received.end());
  for (std::size_t j = 0; j < pattern->locations.size(); ++j)
    word[index_of(pattern->locations[j])] ^= pattern->magnitudes[j];
  // A locator of degree <= t whose roots and magnitudes are consistent still
  // has to land on a codeword; anything else is a detected failure.
  if (!syndromes(word).all_zero()) return std::nullopt;

  std::copy(word.begin(), word.begin() + k_, out.message.begin());
  out.corrected = pattern->locations.size();
  return out;
}

std::vector<std::uint8_t> encode_bytes(const Code& code, std::span<const std::uint8_t> message) {
  std::vector<Symbol> m(message.begin(), message.end());
  const auto c = code.encode(m);
  return {c.begin(), c.end()};
}

std::optional<Decoded> decode_bytes(const Code& code, std::span<const std::uint8_t> received) {
  std::vector<Symbol> r(received.begin(), received.end());
  return code.decode(r);
}

}  // namespace wimax::rs
