#include <array>
#include <cstdio>
#include <stdexcept>

#include "wimax/fec.hpp"

namespace wimax::fec {

namespace {

// Each RS codeword plus its zero tail bytes fills its OFDM symbols exactly;
// every profile carries a whole number of payload bytes per OFDM symbol.
constexpr std::array<BurstProfile, 6> kProfiles{{
    {0, Modulation::qam16, 190, 176, CcRate::r1_2, 4},
    {1, Modulation::qam16, 63, 47, CcRate::r2_3},
    {2, Modulation::qam16, 71, 63, CcRate::r3_4},
    {3, Modulation::qam32, 89, 77, CcRate::r3_4},
    {4, Modulation::qam64, 95, 83, CcRate::r2_3},
    {5, Modulation::qam64, 107, 95, CcRate::r3_4},
}};

// Encoder input bits (tail included) that fill `coded` output bits.
constexpr unsigned input_bits(CcRate r, unsigned coded) {
  switch (r) {
    case CcRate::r1_2: return coded % 2 ? 0 : coded / 2;
    case CcRate::r2_3: return coded % 3 ? 0 : coded / 3 * 2;
    case CcRate::r3_4: return coded % 4 ? 0 : coded / 4 * 3;
  }
  return 0;
}

constexpr bool table_is_consistent() {
  for (const auto& p : kProfiles) {
    const unsigned in = input_bits(p.cc_rate, p.symbols_per_block * kDataCarriers * bits_per_point(p.modulation));
    if (in == 0 || in % 8 != 0 || in / 8 <= p.rs_n) return false;
    if ((p.rs_n - p.rs_k) % 2 != 0 || p.rs_n > 255 || p.rs_k % p.symbols_per_block != 0) return false;
  }
  return true;
}
static_assert(table_is_consistent(), "burst profile table does not fill whole OFDM symbols");

}  // namespace

unsigned BurstProfile::tail_bytes() const noexcept {
  return input_bits(cc_rate, coded_bits_per_block()) / 8 - rs_n;
}

rs::Code BurstProfile::rs_code() const { return rs::Code(gf::Field::gf256(), rs_n, rs_k); }

std::span<const BurstProfile> profiles() noexcept { return kProfiles; }

const BurstProfile& profile(unsigned rate_id) {
  if (rate_id >= kProfiles.size()) throw std::out_of_range("unknown burst profile rate_id");
  return kProfiles[rate_id];
}

std::string format_profile_table() {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-7s %-6s %-11s %-3s %-5s %-7s %-12s %-11s %s\n", "rate_id", "mod",
                "rs(n,k)", "t", "cc", "symbols", "bytes/symbol", "coded bits", "overall rate");
  out += line;
  for (const auto& p : kProfiles) {
    char rs[24];
    std::snprintf(rs, sizeof rs, "(%u,%u)", p.rs_n, p.rs_k);
    char mod[12];
    std::snprintf(mod, sizeof mod, "%uQAM", static_cast<unsigned>(p.modulation));
    std::snprintf(line, sizeof line, "%-7u %-6s %-11s %-3u %-5s %-7u %-12g %-11u %.4f\n", p.rate_id, mod,
                  rs, (p.rs_n - p.rs_k) / 2, p.conv_code().rate_label().c_str(), p.symbols_per_block,
                  p.bytes_per_ofdm_symbol(), p.coded_bits_per_block(), p.code_rate());
    out += line;
  }
  return out;
}

}  // namespace wimax::fec
