#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "wimax/kernels.hpp"
#include "wimax/modem.hpp"

namespace k = wimax::kernels;
using k::cplx;

namespace {

std::vector<cplx> random_cplx(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

bool bit_equal(std::span<const cplx> a, std::span<const cplx> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

// Runs `body(variant)` for every available non-scalar backend.
template <class F>
void for_each_simd(F body) {
  bool any = false;
  for (auto b : {k::Backend::avx2}) {
    if (!k::available(b)) continue;
    any = true;
    body(k::table(b));
  }
  if (!any) MESSAGE("no SIMD backend on this machine; equivalence not exercised");
}

}  // namespace

TEST_CASE("dispatch") {
  CHECK(k::available(k::Backend::scalar));
  CHECK(k::table(k::Backend::scalar).name == "scalar");
  const auto before = k::active().backend;
  k::select(k::Backend::scalar);
  CHECK(k::active().backend == k::Backend::scalar);
  if (!k::available(k::Backend::avx2)) CHECK_THROWS(k::select(k::Backend::avx2));
  k::select(before);
  MESSAGE("active backend: " << k::active().name);
}

TEST_CASE("ACS step matches the scalar reference") {
  std::mt19937_64 rng(1);
  const auto& ref = k::table(k::Backend::scalar);
  for_each_simd([&](const k::KernelTable& simd) {
    for (int trial = 0; trial < 20000; ++trial) {
      std::uint16_t old[64], branch[64], a[64], b[64];
      const auto weight = static_cast<std::uint16_t>(rng() % 3);
      for (auto& m : old) m = static_cast<std::uint16_t>(rng() % (trial % 2 ? 8 : 30000));
      for (auto& m : branch) m = static_cast<std::uint16_t>(rng() % (weight + 1));
      const auto d1 = ref.acs_step(old, a, branch, weight);
      const auto d2 = simd.acs_step(old, b, branch, weight);
      REQUIRE(d1 == d2);
      REQUIRE(std::memcmp(a, b, sizeof a) == 0);
    }
  });
}

TEST_CASE("ACS tie keeps the top-bit-clear predecessor") {
  for (auto be : {k::Backend::scalar, k::Backend::avx2}) {
    if (!k::available(be)) continue;
    std::uint16_t old[64] = {}, branch[64] = {}, out[64];
    CHECK(k::table(be).acs_step(old, out, branch, 0) == 0);
  }
}

TEST_CASE("Alamouti combine matches the scalar reference bit for bit") {
  std::mt19937_64 rng(2);
  const auto& ref = k::table(k::Backend::scalar);
  for_each_simd([&](const k::KernelTable& simd) {
    for (std::size_t n : {0, 1, 2, 3, 7, 192, 193}) {
      auto r1 = random_cplx(n, rng), r2 = random_cplx(n, rng), h1 = random_cplx(n, rng), h2 = random_cplx(n, rng);
      if (n > 2) { h1[1] = 0.0; h2[1] = 0.0; h1[n - 1] = 1e-9; h2[n - 1] = 0.0; }  // erasures, incl. the tail
      std::vector<cplx> s1a(n), s2a(n), s1b(n), s2b(n);
      std::vector<double> ga(n), gb(n);
      std::vector<std::uint8_t> ea(n), eb(n);
      const auto na = ref.alamouti_combine(r1.data(), r2.data(), h1.data(), h2.data(), s1a.data(), s2a.data(),
                                           ga.data(), ea.data(), n);
      const auto nb = simd.alamouti_combine(r1.data(), r2.data(), h1.data(), h2.data(), s1b.data(), s2b.data(),
                                            gb.data(), eb.data(), n);
      CHECK(na == nb);
      CHECK(bit_equal(s1a, s1b));
      CHECK(bit_equal(s2a, s2b));
      CHECK(std::memcmp(ga.data(), gb.data(), n * sizeof(double)) == 0);
      CHECK(ea == eb);
      if (n > 2) CHECK(na == 2);
    }
  });
}

TEST_CASE("complex multiply-accumulate matches the scalar reference") {
  std::mt19937_64 rng(3);
  const auto& ref = k::table(k::Backend::scalar);
  for_each_simd([&](const k::KernelTable& simd) {
    for (std::size_t n : {0, 1, 5, 320, 641}) {
      const auto in = random_cplx(n, rng);
      const auto base = random_cplx(n, rng);
      const cplx h = random_cplx(1, rng)[0];
      auto a = base, b = base;
      ref.cmul_accumulate(a.data(), in.data(), h, n);
      simd.cmul_accumulate(b.data(), in.data(), h, n);
      CHECK(bit_equal(a, b));
    }
  });
}

TEST_CASE("nearest point matches the scalar reference, ties included") {
  std::mt19937_64 rng(4);
  const auto& ref = k::table(k::Backend::scalar);
  for_each_simd([&](const k::KernelTable& simd) {
    for (auto m : {wimax::modem::Modulation::qam16, wimax::modem::Modulation::qam32,
                   wimax::modem::Modulation::qam64}) {
      const auto& c = wimax::modem::Constellation::get(m);
      auto samples = random_cplx(2000, rng);
      for (auto& s : samples) s *= 0.8;
      // exact lattice ties: points and midpoints on the odd-integer grid
      for (unsigned a = 0; a < c.size(); ++a)
        for (unsigned b = 0; b < c.size(); ++b) samples.push_back(0.5 * (c.point(a) + c.point(b)));
      std::vector<std::uint16_t> ia(samples.size()), ib(samples.size());
      ref.nearest_point(samples.data(), samples.size(), c.in_phase().data(), c.quadrature().data(), c.size(),
                        ia.data());
      simd.nearest_point(samples.data(), samples.size(), c.in_phase().data(), c.quadrature().data(), c.size(),
                         ib.data());
      CHECK(ia == ib);
    }
    // odd point count exercises the scalar tail
    const double pi[5] = {0, 1, 2, 3, 4}, pq[5] = {0, 0, 0, 0, 0};
    const cplx s[4] = {3.9, 0.5, 2.5, -1.0};
    std::uint16_t oa[4], ob[4];
    ref.nearest_point(s, 4, pi, pq, 5, oa);
    simd.nearest_point(s, 4, pi, pq, 5, ob);
    CHECK(std::memcmp(oa, ob, sizeof oa) == 0);
    CHECK(oa[0] == 4);
    CHECK(oa[1] == 0);
    CHECK(oa[2] == 2);
  });
}
