#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wimax/harness.hpp"
#include "wimax/modem.hpp"
#include "wimax/secmac.hpp"

namespace h = wimax::harness;
using wimax::fec::Modulation;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

h::SimConfig uncoded(Modulation m) {
  h::SimConfig c;
  c.modulation = m;
  return c;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("sweep parsing") {
  CHECK(h::parse_sweep("0:2:20").size() == 11);
  CHECK(h::parse_sweep("0:2:20").back() == 20.0);
  CHECK(h::parse_sweep("0:0.1:1").size() == 11);
  CHECK(h::parse_sweep("1,3,7.5") == std::vector<double>{1, 3, 7.5});
  CHECK(h::parse_sweep("5") == std::vector<double>{5});
  CHECK_THROWS_AS(h::parse_sweep(""), h::ConfigError);
  CHECK_THROWS_AS(h::parse_sweep("4:2:0"), h::ConfigError);
  CHECK_THROWS_AS(h::parse_sweep("0:0:4"), h::ConfigError);
  CHECK_THROWS_AS(h::parse_sweep("1:2"), h::ConfigError);
  CHECK_THROWS_AS(h::parse_sweep("1,x"), h::ConfigError);
  CHECK(h::parse_on_off("on"));
  CHECK_FALSE(h::parse_on_off("off"));
  CHECK_THROWS_AS(h::parse_on_off("maybe"), h::ConfigError);
}

TEST_CASE("config text and settings") {
  const auto kv = h::parse_config_text("# comment\nmode = theoretical\n\n  mod=64  # trailing\nebn0 = 0:5:10\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[1].first == "mod");
  CHECK(kv[1].second == "64");
  CHECK_THROWS_AS(h::parse_config_text("mode theoretical\n"), h::ConfigError);
  CHECK_THROWS_AS(h::read_config_file("/nonexistent/file.cfg"), h::IoError);

  h::SimConfig c;
  for (const auto& [k, v] : kv) h::apply_setting(c, k, v);
  CHECK(c.mode == h::Mode::theoretical);
  CHECK(c.modulation == Modulation::qam64);
  CHECK(c.sweep == std::vector<double>{0, 5, 10});

  h::apply_setting(c, "profile", "3");
  h::apply_setting(c, "stbc", "on");
  h::apply_setting(c, "cp", "8");
  h::apply_setting(c, "max-bits", "20000");
  h::apply_setting(c, "enc-key", "133457799BBCDFF1");
  h::apply_setting(c, "csi", "perfect");
  h::apply_setting(c, "esn0", "30");
  CHECK(c.profile == 3u);
  CHECK(c.stbc);
  CHECK(c.cp_divisor == 8);
  CHECK(c.max_bits == 20000);
  CHECK(c.enc_key == 0x133457799BBCDFF1ull);
  CHECK(c.csi == h::Csi::perfect);
  CHECK(c.axis == h::SnrAxis::esn0);
  CHECK_THROWS_AS(h::apply_setting(c, "bogus", "1"), h::ConfigError);
  CHECK_THROWS_AS(h::apply_setting(c, "mod", "17"), h::ConfigError);
  CHECK_THROWS_AS(h::apply_setting(c, "seed", "-4"), h::ConfigError);
  CHECK_THROWS_AS(h::apply_setting(c, "enc-key", "12"), h::ConfigError);
}

TEST_CASE("validation") {
  auto expect_bad = [](auto edit) {
    h::SimConfig c = uncoded(Modulation::qam16);
    edit(c);
    CHECK_THROWS_AS(c.validate(), h::ConfigError);
  };
  CHECK_NOTHROW(uncoded(Modulation::qam16).validate());
  expect_bad([](h::SimConfig& c) { c.seed = 0; });
  expect_bad([](h::SimConfig& c) { c.max_bits = 9999; });
  expect_bad([](h::SimConfig& c) { c.sweep = {1, 1}; });
  expect_bad([](h::SimConfig& c) { c.sweep = {}; });
  expect_bad([](h::SimConfig& c) { c.cp_divisor = 5; });
  expect_bad([](h::SimConfig& c) { c.profile = 9; });
  expect_bad([](h::SimConfig& c) { c.profile = 4; });  // 64-QAM profile with --mod 16
  expect_bad([](h::SimConfig& c) { c.tamper = true; });
  expect_bad([](h::SimConfig& c) { c.mac_bits = 70; });
  expect_bad([](h::SimConfig& c) { c.channel = "urban"; });
  expect_bad([](h::SimConfig& c) {
    c.security = true;
    c.mac_key = c.enc_key;
  });
  expect_bad([](h::SimConfig& c) {
    c.mode = h::Mode::semianalytic;
    c.profile = 1;
  });
  expect_bad([](h::SimConfig& c) {
    c.mode = h::Mode::semianalytic;
    c.security = true;
  });
  expect_bad([](h::SimConfig& c) {
    c.profile = 0;  // four-symbol blocks do not tile three pairs
    c.data_pairs = 3;
  });
  h::SimConfig none;  // neither profile nor modulation: uncoded 16-QAM
  CHECK_NOTHROW(none.validate());
  CHECK_FALSE(none.coded());
  CHECK(none.effective_modulation() == Modulation::qam16);
}

TEST_CASE("burst capacity and sealed payload") {
  h::SimConfig c = uncoded(Modulation::qam16);
  CHECK(c.burst_symbols() == 9);
  CHECK(c.burst_capacity_bytes() == 8 * 192 * 4 / 8);
  CHECK(c.payload_bytes() == c.burst_capacity_bytes());
  c.security = true;
  const std::size_t p = c.payload_bytes();
  CHECK(wimax::secmac::sealed_size(p) <= c.burst_capacity_bytes());
  CHECK(wimax::secmac::sealed_size(p + 1) > c.burst_capacity_bytes());

  h::SimConfig coded;
  coded.profile = 1;
  CHECK(coded.effective_modulation() == Modulation::qam16);
  CHECK(coded.burst_capacity_bytes() == 8 * 47);
  coded.profile = 0;
  CHECK(coded.burst_capacity_bytes() == 2 * 176);
}

TEST_CASE("SNR model") {
  const wimax::modem::OfdmGrid grid(4);
  const h::SnrModel net{4.0, 0.5, false, h::SnrAxis::ebn0, &grid};
  CHECK(net.channel_esn0_db(10.0) == doctest::Approx(10.0 + 10 * std::log10(2.0 * 200.0 / 256.0)));
  CHECK(net.ebn0_db(10.0) == 10.0);
  const h::SnrModel gross{4.0, 0.5, true, h::SnrAxis::ebn0, &grid};
  CHECK(gross.channel_esn0_db(10.0) == doctest::Approx(10.0 + 10 * std::log10(4 * 0.5 * 0.75 * 0.8)));
  const h::SnrModel es{4.0, 1.0, false, h::SnrAxis::esn0, &grid};
  CHECK(es.channel_esn0_db(12.0) == 12.0);
  CHECK(es.ebn0_db(12.0) == doctest::Approx(12.0 - 10 * std::log10(4.0 * 200.0 / 256.0)));
  // Eb/N0 on a data carrier: carrier Es/N0 per information bit
  const double n0c = net.carrier_noise_variance(6.0);
  CHECK(1.0 / (n0c * 4.0 * 0.5) == doctest::Approx(std::pow(10.0, 0.6)));
}

TEST_CASE("CSV output") {
  CHECK(h::format_csv({}) == std::string(h::kCsvHeader) + "\n");
  std::vector<h::BerPoint> pts(3);
  for (int i = 0; i < 3; ++i) {
    pts[i].mode = h::Mode::montecarlo;
    pts[i].ebn0_db = 2.0 * i;
    pts[i].bits = 1000000 + i;
    pts[i].bit_errors = 1234 - i;
    pts[i].ber = static_cast<double>(pts[i].bit_errors) / static_cast<double>(pts[i].bits);
    pts[i].frames = 10 + i;
    pts[i].frame_errors = i;
    pts[i].auth_failures = 0;
  }
  const auto text = h::format_csv(pts);
  CHECK(count_lines(text) == 4);
  CHECK(text.find("montecarlo,0,1000000,1234,1.23400e-03,10,0,0\n") != std::string::npos);
  const auto back = h::parse_csv(text);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].mode == pts[i].mode);
    CHECK(back[i].ebn0_db == pts[i].ebn0_db);
    CHECK(back[i].bits == pts[i].bits);
    CHECK(back[i].bit_errors == pts[i].bit_errors);
    CHECK(back[i].ber == doctest::Approx(pts[i].ber).epsilon(1e-5));
    CHECK(back[i].frames == pts[i].frames);
  }
  CHECK_THROWS(h::parse_csv("nonsense\n"));
  CHECK_THROWS_AS(h::write_csv(pts, std::string("/nonexistent/dir/out.csv")), h::IoError);

  std::ostringstream dat;
  h::write_dat(pts, dat);
  CHECK(count_lines(dat.str()) >= 3);
}

TEST_CASE("theoretical engine") {
  auto c = uncoded(Modulation::qam16);
  c.mode = h::Mode::theoretical;
  c.sweep = {7.0};
  const auto one = h::run(c);
  REQUIRE(one.size() == 1);
  CHECK(one[0].ber == wimax::modem::theoretical_ber(Modulation::qam16, 7.0));
  CHECK(one[0].bits == 0);
  CHECK(one[0].bit_errors == 0);

  c.sweep = h::parse_sweep("0:2:20");
  const auto p16 = h::run(c);
  c.modulation = Modulation::qam64;
  const auto p64 = h::run(c);
  for (std::size_t i = 0; i < p16.size(); ++i) {
    if (i) CHECK(p16[i].ber < p16[i - 1].ber);
    CHECK(p64[i].ber > p16[i].ber);
  }
}

TEST_CASE("semianalytic on the distortionless chain equals the closed form") {
  for (auto m : {Modulation::qam16, Modulation::qam32, Modulation::qam64}) {
    for (bool stbc : {false, true}) {
      for (auto csi : {h::Csi::perfect, h::Csi::automatic}) {
        auto c = uncoded(m);
        c.stbc = stbc;
        c.csi = csi;
        c.mode = h::Mode::semianalytic;
        const auto sa = h::run(c);
        c.mode = h::Mode::theoretical;
        const auto th = h::run(c);
        for (std::size_t i = 0; i < sa.size(); ++i) CHECK(std::abs(sa[i].ber - th[i].ber) < 1e-6);
      }
    }
  }
}

TEST_CASE("semianalytic agrees with Monte Carlo on a frozen flat fade") {
  auto c = uncoded(Modulation::qam16);
  c.channel = "flat";
  c.freeze_channel = true;
  c.csi = h::Csi::perfect;
  c.sweep = h::parse_sweep("0:3:36");
  c.mode = h::Mode::semianalytic;
  const auto sa = h::run(c);
  c.mode = h::Mode::montecarlo;
  c.min_errors = 400;
  c.max_bits = 30'000'000;
  std::vector<double> in_range;
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (sa[i].ber >= 1e-4 && sa[i].ber <= 1e-2) in_range.push_back(c.sweep[i]);
  REQUIRE(in_range.size() >= 2);
  c.sweep = in_range;
  const auto mc = h::run(c);
  for (std::size_t i = 0, j = 0; i < sa.size(); ++i) {
    if (!(sa[i].ber >= 1e-4 && sa[i].ber <= 1e-2)) continue;
    CAPTURE(sa[i].ebn0_db);
    CAPTURE(sa[i].ber);
    CAPTURE(mc[j].ber);
    CHECK(std::abs(mc[j].ber / sa[i].ber - 1.0) <= 0.15);
    ++j;
  }
}

TEST_CASE("noiseless Monte Carlo is error free at every profile") {
  for (bool stbc : {false, true}) {
    for (bool security : {false, true}) {
      for (unsigned id = 0; id < 6; ++id) {
        h::SimConfig c;
        c.profile = id;
        c.stbc = stbc;
        c.security = security;
        c.channel = "dispersive";
        c.axis = h::SnrAxis::esn0;
        c.sweep = {kInf};
        c.max_frames = 3;
        const auto r = h::run(c);
        CAPTURE(id);
        CAPTURE(stbc);
        CHECK(r[0].frames == 3);
        CHECK(r[0].bit_errors == 0);
        CHECK(r[0].frame_errors == 0);
        CHECK(r[0].auth_failures == 0);
      }
      auto u = uncoded(Modulation::qam32);
      u.stbc = stbc;
      u.security = security;
      u.sweep = {kInf};
      u.axis = h::SnrAxis::esn0;
      u.max_frames = 3;
      CHECK(h::run(u)[0].bit_errors == 0);
    }
  }
}

TEST_CASE("tampered frames always fail authentication") {
  h::SimConfig c;
  c.profile = 2;
  c.security = true;
  c.tamper = true;
  c.axis = h::SnrAxis::esn0;
  c.sweep = {kInf};
  c.max_frames = 20;
  c.min_errors = 0;
  const auto r = h::run(c);
  CHECK(r[0].frames == 20);
  CHECK(r[0].auth_failures == 20);
  CHECK(r[0].frame_errors == 20);
}

TEST_CASE("counting integrity, energy accounting and monotone curves") {
  for (bool stbc : {false, true}) {
    auto c = uncoded(Modulation::qam16);
    c.stbc = stbc;
    c.sweep = h::parse_sweep("0:3:12");
    c.max_bits = 400'000;
    const auto r = h::run(c);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r[i].bit_errors <= r[i].bits);
      CHECK(r[i].ber == static_cast<double>(r[i].bit_errors) / static_cast<double>(r[i].bits));
      CHECK(r[i].tx_power == doctest::Approx(1.0).epsilon(0.01));
      if (i && !(r[i].bit_errors < 50 && r[i - 1].bit_errors < 50)) CHECK(r[i].ber <= r[i - 1].ber);
    }
  }
}

TEST_CASE("results do not depend on the thread count and repeat exactly") {
  h::SimConfig c;
  c.profile = 3;
  c.channel = "flat";
  c.stbc = true;
  c.sweep = {6, 10};
  c.max_bits = 100'000;
  c.threads = 1;
  const auto a = h::format_csv(h::run(c));
  c.threads = 3;
  const auto b = h::format_csv(h::run(c));
  const auto again = h::format_csv(h::run(c));
  CHECK(a == b);
  CHECK(b == again);
  c.seed = 2;
  CHECK(h::format_csv(h::run(c)) != a);

  const auto f1 = h::simulate_frame(c, 0, 5), f2 = h::simulate_frame(c, 0, 5);
  CHECK(f1.bit_errors == f2.bit_errors);
  CHECK(f1.tx_energy == f2.tx_energy);
}

TEST_CASE("diversity slopes over flat Rayleigh") {
  auto fit = [](const std::vector<h::BerPoint>& c) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : c) {
      const double y = std::log10(p.ber);
      sx += p.ebn0_db;
      sy += y;
      sxx += p.ebn0_db * p.ebn0_db;
      sxy += p.ebn0_db * y;
    }
    const double n = static_cast<double>(c.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  auto c = uncoded(Modulation::qam16);
  c.channel = "flat";
  c.sweep = {15, 20, 25};
  c.min_errors = 0;
  c.max_bits = 10'000'000;
  const auto siso = h::run(c);
  c.stbc = true;
  const auto stbc = h::run(c);
  for (const auto& p : stbc) REQUIRE(p.bit_errors > 0);
  const double s1 = fit(siso), s2 = fit(stbc);
  CAPTURE(s1);
  CAPTURE(s2);
  CHECK(s2 <= -0.15);
  CHECK(s1 >= -0.12);
}
