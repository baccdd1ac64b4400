#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wimax/gf.hpp"
#include "wimax/rs.hpp"

using wimax::gf::Element;
using wimax::gf::Field;
using wimax::gf::Poly;
using wimax::gf::Symbol;

namespace {

Poly random_poly(const Field& f, std::mt19937& rng, unsigned max_degree) {
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<unsigned> val(0, f.order());
  std::vector<Symbol> c(deg(rng) + 1);
  for (auto& x : c) x = static_cast<Symbol>(val(rng));
  return Poly(f, c);
}

}  // namespace

TEST_CASE("gf16 field axioms hold exhaustively") {
  const Field& f = Field::gf16();
  CHECK(f.size() == 16);
  CHECK(f.order() == 15);
  for (Symbol a = 0; a < 16; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(a, 0) == 0);
    CHECK(f.add(a, a) == 0);
    for (Symbol b = 0; b < 16; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (Symbol c = 0; c < 16; ++c) {
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST_CASE("gf mul agrees with carry-less multiply and reduction") {
  for (const Field* f : {&Field::gf16(), &Field::gf256()}) {
    const unsigned m = f->m();
    for (unsigned a = 0; a < f->size(); ++a) {
      for (unsigned b = 0; b < f->size(); ++b) {
        unsigned p = 0;
        for (unsigned i = 0; i < m; ++i)
          if (b >> i & 1) p ^= a << i;
        for (int i = 2 * static_cast<int>(m) - 2; i >= static_cast<int>(m); --i)
          if (p >> i & 1) p ^= f->primitive_poly() << (i - m);
        REQUIRE(f->mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) == p);
      }
    }
  }
}

TEST_CASE("exp/log tables are consistent") {
  const Field& f = Field::gf256();
  for (Symbol a = 1; a < 256; ++a) {
    CHECK(f.alpha_pow(f.log(a)) == a);
    for (Symbol b = 1; b < 256; b += 7)
      CHECK(f.alpha_pow((f.log(a) + f.log(b)) % f.order()) == f.mul(a, b));
  }
  CHECK(f.alpha_pow(255) == 1);
  CHECK(f.alpha_pow(-1) == f.inv(2));
}

TEST_CASE("inverse and division") {
  const Field& f = Field::gf16();
  CHECK(f.inv(1) == 1);
  CHECK(f.inv(2) == f.alpha_pow(14));  // alpha^(2^m - 2)
  for (Symbol a = 1; a < 16; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    for (Symbol b = 1; b < 16; ++b) CHECK(f.mul(f.div(a, b), b) == a);
  }
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK_THROWS_AS(f.div(3, 0), std::domain_error);
  CHECK_THROWS_AS(f.log(0), std::domain_error);
}

TEST_CASE("pow handles zero and negative exponents") {
  const Field& f = Field::gf16();
  CHECK(f.pow(0, 0) == 1);
  CHECK(f.pow(0, 5) == 0);
  CHECK_THROWS_AS(f.pow(0, -1), std::domain_error);
  CHECK(f.pow(2, -1) == f.inv(2));
  CHECK(f.pow(7, 15) == 1);
  CHECK(f.pow(7, 3) == f.mul(7, f.mul(7, 7)));
}

TEST_CASE("field construction rejects bad polynomials") {
  CHECK_NOTHROW(Field(4, 0x13));
  CHECK_THROWS_AS(Field(4, 0x1F), std::invalid_argument);  // irreducible, order 5
  CHECK_THROWS_AS(Field(4, 0x15), std::invalid_argument);  // reducible
  CHECK_THROWS_AS(Field(4, 0x3), std::invalid_argument);   // wrong degree
  CHECK(Field(4, 0x13) == Field::gf16());
  CHECK_FALSE(Field(4, 0x19) == Field::gf16());
}

TEST_CASE("elements from different fields do not mix") {
  const Element a(Field::gf16(), 3);
  const Element b(Field::gf256(), 3);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK((a * wimax::gf::inv(a)).value() == 1);
  CHECK_THROWS(Element(Field::gf16(), 16));
}

TEST_CASE("zero polynomial is canonical") {
  const Field& f = Field::gf16();
  const Poly z(f, {0, 0, 0});
  CHECK(z.is_zero());
  CHECK_FALSE(z.degree().has_value());
  CHECK(z == Poly(f));
  CHECK(Poly(f, {1, 2, 0, 0}).degree() == 1u);
}

TEST_CASE("poly_eval basics") {
  const Field& f = Field::gf16();
  std::mt19937 rng(5);
  for (Symbol x = 0; x < 16; ++x) CHECK(wimax::gf::poly_eval(Poly(f), x) == 0);
  for (int i = 0; i < 50; ++i) {
    const Poly p = random_poly(f, rng, 6);
    CHECK(p.eval(0) == p[0]);
  }
  const Poly p(f, {1, 1});  // 1 + x
  CHECK(p.eval(1) == 0);
}

TEST_CASE("codewords vanish at the generator roots") {
  const auto& f = Field::gf16();
  const wimax::rs::Code code(f, 15, 11);
  std::mt19937 rng(9);
  std::uniform_int_distribution<unsigned> val(0, 15);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Symbol> msg(11);
    for (auto& s : msg) s = static_cast<Symbol>(val(rng));
    const auto cw = code.encode(msg);
    // index j carries x^(n-1-j)
    std::vector<Symbol> coeffs(cw.rbegin(), cw.rend());
    const Poly r(f, coeffs);
    for (unsigned i = 1; i <= 4; ++i) CHECK(r.eval(f.alpha_pow(i)) == 0);
  }
}

TEST_CASE("poly_mul and poly_divmod") {
  const Field& f = Field::gf16();
  std::mt19937 rng(11);
  const Poly one(f, {1});
  for (int trial = 0; trial < 500; ++trial) {
    const Poly a = random_poly(f, rng, 6);
    Poly b = random_poly(f, rng, 6);
    CHECK(a * one == a);
    if (b.is_zero()) b = one;
    const auto [q, r] = wimax::gf::poly_divmod(a, b);
    CHECK(q * b + r == a);
    if (!r.is_zero()) CHECK(*r.degree() < *b.degree());
    if (!a.is_zero()) {
      const auto [q1, r1] = wimax::gf::poly_divmod(a, a);
      CHECK(q1 == one);
      CHECK(r1.is_zero());
    }
  }
  CHECK_THROWS_AS(wimax::gf::poly_divmod(one, Poly(f)), std::domain_error);
}

TEST_CASE("poly derivative, gcd, truncation") {
  const Field& f = Field::gf16();
  // d/dx (1 + 2x + 3x^2 + 4x^3) = 2 + 4x^2 in characteristic 2
  CHECK(Poly(f, {1, 2, 3, 4}).derivative() == Poly(f, {2, 0, 4}));
  CHECK(Poly(f, {1, 2, 3, 4}).truncated(2) == Poly(f, {1, 2}));
  CHECK(Poly(f, {1, 2}).shifted(2) == Poly(f, {0, 0, 1, 2}));

  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly a = random_poly(f, rng, 4);
    const Poly b = random_poly(f, rng, 4);
    const Poly c = random_poly(f, rng, 3);
    if (c.is_zero() || (a.is_zero() && b.is_zero())) continue;
    const Poly g = wimax::gf::poly_gcd(a * c, b * c);
    CHECK(g.leading() == 1);
    CHECK(wimax::gf::poly_divmod(a * c, g).second.is_zero());
    CHECK(wimax::gf::poly_divmod(b * c, g).second.is_zero());
    CHECK(wimax::gf::poly_divmod(g, c.scaled(f.inv(c.leading()))).second.is_zero());
  }
}
