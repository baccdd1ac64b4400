#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "wimax/gf.hpp"
#include "wimax/rs.hpp"

using wimax::gf::Field;
using wimax::gf::Poly;
using wimax::gf::Symbol;
using wimax::rs::Code;

namespace {

std::vector<Symbol> random_message(const Code& code, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> val(0, code.field().order());
  std::vector<Symbol> m(code.k());
  for (auto& s : m) s = static_cast<Symbol>(val(rng));
  return m;
}

// Distinct exponents with nonzero magnitudes.
wimax::rs::ErrorPattern random_errors(const Code& code, unsigned weight, std::mt19937& rng) {
  std::vector<unsigned> locs(code.n());
  for (unsigned i = 0; i < code.n(); ++i) locs[i] = i;
  std::shuffle(locs.begin(), locs.end(), rng);
  std::uniform_int_distribution<unsigned> mag(1, code.field().order());
  wimax::rs::ErrorPattern e;
  for (unsigned i = 0; i < weight; ++i) {
    e.locations.push_back(locs[i]);
    e.magnitudes.push_back(static_cast<Symbol>(mag(rng)));
  }
  return e;
}

std::vector<Symbol> apply(const Code& code, std::vector<Symbol> word, const wimax::rs::ErrorPattern& e) {
  for (std::size_t i = 0; i < e.locations.size(); ++i)
    word[code.index_of(e.locations[i])] ^= e.magnitudes[i];
  return word;
}

}  // namespace

TEST_CASE("RS(15,11) generator and parity oracle") {
  const Code code(Field::gf16(), 15, 11);
  CHECK(code.t() == 2);
  CHECK(code.generator() == Poly(Field::gf16(), {7, 8, 12, 13, 1}));

  std::vector<Symbol> msg(11);
  for (unsigned i = 0; i < 11; ++i) msg[i] = static_cast<Symbol>(i + 1);
  auto cw = code.encode(msg);
  CHECK(std::equal(msg.begin(), msg.end(), cw.begin()));
  CHECK(std::vector<Symbol>(cw.begin() + 11, cw.end()) == std::vector<Symbol>{11, 10, 14, 6});

  cw = code.encode(std::vector<Symbol>(11, 1));
  CHECK(std::vector<Symbol>(cw.begin() + 11, cw.end()) == std::vector<Symbol>{1, 1, 1, 1});
}

TEST_CASE("RS(255,239) parity oracle") {
  const Code code = Code::rs255_239();
  std::vector<std::uint8_t> msg(239);
  for (unsigned i = 0; i < 239; ++i) msg[i] = static_cast<std::uint8_t>((7 * i + 3) % 256);
  const auto cw = wimax::rs::encode_bytes(code, msg);
  const std::vector<std::uint8_t> parity(cw.begin() + 239, cw.end());
  CHECK(parity == std::vector<std::uint8_t>{85, 202, 67, 74, 163, 170, 250, 172, 225, 2, 201, 21,
                                            121, 194, 33, 185});
}

TEST_CASE("encoder basics") {
  const Code code(Field::gf16(), 15, 11);
  CHECK(code.encode(std::vector<Symbol>(11, 0)) == std::vector<Symbol>(15, 0));
  CHECK_THROWS_AS(code.encode(std::vector<Symbol>(10, 0)), std::invalid_argument);
  CHECK_THROWS_AS(code.syndromes(std::vector<Symbol>(14, 0)), std::invalid_argument);
  CHECK_THROWS(Code(Field::gf16(), 16, 12));
  CHECK_THROWS(Code(Field::gf16(), 15, 10));
  CHECK_THROWS(Code(Field::gf16(), 15, 15));

  std::mt19937 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_message(code, rng);
    const auto b = random_message(code, rng);
    std::vector<Symbol> ab(11);
    for (unsigned i = 0; i < 11; ++i) ab[i] = a[i] ^ b[i];
    const auto ca = code.encode(a), cb = code.encode(b), cab = code.encode(ab);
    for (unsigned i = 0; i < 15; ++i) CHECK(cab[i] == (ca[i] ^ cb[i]));
    CHECK(code.syndromes(ca).all_zero());
  }
}

TEST_CASE("syndromes of injected errors") {
  const Field& f = Field::gf16();
  const Code code(f, 15, 11);
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cw = code.encode(random_message(code, rng));
    const auto e = random_errors(code, 1 + trial % 2, rng);
    const auto syn = code.syndromes(apply(code, cw, e));
    REQUIRE(syn.s.size() == 4);
    for (unsigned i = 1; i <= 4; ++i) {
      Symbol expect = 0;
      for (std::size_t j = 0; j < e.locations.size(); ++j)
        expect ^= f.mul(e.magnitudes[j], f.alpha_pow(static_cast<long long>(i) * e.locations[j]));
      CHECK(syn.s[i - 1] == expect);
    }
  }
}

TEST_CASE("key equation") {
  const Field& f = Field::gf16();
  const Code code(f, 15, 11);

  const auto clean = code.solve_key_equation(code.syndromes(std::vector<Symbol>(15, 0)));
  CHECK(clean.sigma == Poly(f, {1}));
  CHECK(clean.omega.is_zero());
  CHECK(code.find_errors(clean)->locations.empty());

  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto cw = code.encode(random_message(code, rng));
    const auto e = random_errors(code, 1 + trial % 2, rng);
    const auto syn = code.syndromes(apply(code, cw, e));
    const auto loc = code.solve_key_equation(syn);
    CHECK(loc.sigma[0] == 1);
    CHECK(*loc.sigma.degree() == e.locations.size());
    CHECK((loc.omega.is_zero() || *loc.omega.degree() < *loc.sigma.degree()));
    // sigma S = omega mod x^2t
    const Poly s(f, syn.s);
    CHECK((loc.sigma * s).truncated(4) == loc.omega);
    // relatively prime
    CHECK(*wimax::gf::poly_gcd(loc.sigma, loc.omega).degree() == 0);
    // brute-force root scan: roots are exactly the inverse locators
    std::set<unsigned> roots;
    for (Symbol x = 1; x < 16; ++x)
      if (loc.sigma.eval(x) == 0) roots.insert(f.log(f.inv(x)));
    CHECK(roots == std::set<unsigned>(e.locations.begin(), e.locations.end()));
    if (e.locations.size() == 1)
      CHECK(loc.sigma == Poly(f, {1, f.alpha_pow(e.locations[0])}));
  }
}

TEST_CASE("find_errors on a given locator") {
  const Field& f = Field::gf16();
  const Code code(f, 15, 11);
  wimax::rs::ErrorLocator loc{Poly(f, {1, f.alpha_pow(3)}), Poly(f, {f.alpha_pow(3)})};
  const auto pat = code.find_errors(loc);
  REQUIRE(pat.has_value());
  REQUIRE(pat->locations.size() == 1);
  CHECK(pat->locations[0] == 3);
}

TEST_CASE("weight 1 and 2 patterns are recovered exactly") {
  const Field& f = Field::gf16();
  const Code code(f, 15, 11);
  std::mt19937 rng(4);
  const auto msg = random_message(code, rng);
  const auto cw = code.encode(msg);
  // all weight-1 patterns
  for (unsigned loc = 0; loc < 15; ++loc) {
    for (Symbol y = 1; y < 16; ++y) {
      const wimax::rs::ErrorPattern e{{loc}, {y}};
      const auto received = apply(code, cw, e);
      const auto pat = code.find_errors(code.solve_key_equation(code.syndromes(received)));
      REQUIRE(pat.has_value());
      CHECK(pat->locations == e.locations);
      CHECK(pat->magnitudes == e.magnitudes);
      const auto d = code.decode(received);
      REQUIRE(d.has_value());
      CHECK(d->message == msg);
      CHECK(d->corrected == 1);
    }
  }
  // all weight-2 location pairs, subsampled magnitudes
  for (unsigned a = 0; a < 15; ++a) {
    for (unsigned b = a + 1; b < 15; ++b) {
      for (Symbol ya = 1; ya < 16; ya += 2) {
        for (Symbol yb = 1; yb < 16; yb += 3) {
          const auto d = code.decode(apply(code, cw, {{a, b}, {ya, yb}}));
          REQUIRE(d.has_value());
          CHECK(d->message == msg);
          CHECK(d->corrected == 2);
        }
      }
    }
  }
}

TEST_CASE("t+1 errors never decode silently to the original") {
  const Code code(Field::gf16(), 15, 11);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto msg = random_message(code, rng);
    const auto d = code.decode(apply(code, code.encode(msg), random_errors(code, 3, rng)));
    if (d) CHECK((d->message != msg || d->corrected >= 3));
  }
}

TEST_CASE("round trip over every RS(7,3) message") {
  const Field f(3, 0xB);
  const Code code(f, 7, 3);
  for (unsigned v = 0; v < 512; ++v) {
    const std::vector<Symbol> msg{static_cast<Symbol>(v & 7), static_cast<Symbol>(v >> 3 & 7),
                                  static_cast<Symbol>(v >> 6)};
    const auto cw = code.encode(msg);
    const auto d = code.decode(cw);
    REQUIRE(d.has_value());
    CHECK(d->message == msg);
    CHECK(d->corrected == 0);
    for (unsigned loc = 0; loc < 7; ++loc) {
      auto bad = cw;
      bad[loc] ^= 5;
      const auto d1 = code.decode(bad);
      REQUIRE(d1.has_value());
      CHECK(d1->message == msg);
    }
  }
}

TEST_CASE("shortened codes") {
  const Code full = Code::rs255_239();
  CHECK(full.shortened(0).n() == 255);
  const Code s = wimax::rs::rs_shorten(full, 215);
  CHECK(s.n() == 40);
  CHECK(s.k() == 24);
  CHECK(s.generator() == full.generator());
  CHECK_THROWS(full.shortened(239));

  std::mt19937 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto msg = random_message(s, rng);
    const auto cw = s.encode(msg);
    // zero-padded into the full code it is a codeword with the same parity
    std::vector<Symbol> padded(215, 0);
    padded.insert(padded.end(), cw.begin(), cw.end());
    CHECK(full.syndromes(padded).all_zero());
    std::vector<Symbol> full_msg(215, 0);
    full_msg.insert(full_msg.end(), msg.begin(), msg.end());
    CHECK(full.encode(full_msg) == padded);
    const auto d = full.decode(padded);
    REQUIRE(d.has_value());
    CHECK(std::equal(msg.begin(), msg.end(), d->message.begin() + 215));
  }
}

TEST_CASE("RS(40,36) from RS(255,239) corrects two errors") {
  const Code code(Field::gf256(), 40, 36);
  CHECK(code.t() == 2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto msg = random_message(code, rng);
    const auto d = code.decode(apply(code, code.encode(msg), random_errors(code, 2, rng)));
    REQUIRE(d.has_value());
    CHECK(d->message == msg);
  }
}

TEST_CASE("byte wrappers") {
  const Code code = Code::rs255_239();
  std::mt19937 rng(8);
  std::vector<std::uint8_t> msg(239);
  for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
  auto cw = wimax::rs::encode_bytes(code, msg);
  CHECK(cw.size() == 255);
  for (int i = 0; i < 8; ++i) cw[static_cast<std::size_t>(i * 31)] ^= 0x5A;
  const auto d = wimax::rs::decode_bytes(code, cw);
  REQUIRE(d.has_value());
  CHECK(d->corrected == 8);
  CHECK(std::equal(msg.begin(), msg.end(), d->message.begin()));
}
