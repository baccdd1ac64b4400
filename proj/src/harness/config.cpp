#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wimax/harness.hpp"
#include "wimax/secmac.hpp"

namespace wimax::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
  return v;
}

// Accepts plain integers and integral scientific notation such as 1e7.
std::uint64_t parse_count(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (v < 0 || v != std::floor(v) || v > 1.8e19)
    throw ConfigError("expected a non-negative integer for " + std::string(key));
  return static_cast<std::uint64_t>(v);
}

unsigned parse_unsigned(std::string_view key, std::string_view text) {
  const auto v = parse_count(key, text);
  if (v > 0xFFFFFFFFull) throw ConfigError("value out of range for " + std::string(key));
  return static_cast<unsigned>(v);
}

fec::Modulation parse_modulation(std::string_view text) {
  text = trim(text);
  if (text == "16") return fec::Modulation::qam16;
  if (text == "32") return fec::Modulation::qam32;
  if (text == "64") return fec::Modulation::qam64;
  throw ConfigError("constellation order must be 16, 32 or 64");
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::theoretical: return "theoretical";
    case Mode::semianalytic: return "semianalytic";
    case Mode::montecarlo: return "montecarlo";
  }
  return "unknown";
}

Mode parse_mode(std::string_view s) {
  s = trim(s);
  if (s == "theoretical") return Mode::theoretical;
  if (s == "semianalytic") return Mode::semianalytic;
  if (s == "montecarlo") return Mode::montecarlo;
  throw ConfigError("mode must be theoretical, semianalytic or montecarlo");
}

std::string_view to_string(Csi c) {
  switch (c) {
    case Csi::automatic: return "auto";
    case Csi::per_carrier: return "per-carrier";
    case Csi::flat: return "flat";
    case Csi::perfect: return "perfect";
  }
  return "unknown";
}

Csi parse_csi(std::string_view s) {
  s = trim(s);
  if (s == "auto") return Csi::automatic;
  if (s == "per-carrier") return Csi::per_carrier;
  if (s == "flat") return Csi::flat;
  if (s == "perfect") return Csi::perfect;
  throw ConfigError("csi must be auto, per-carrier, flat or perfect");
}

bool parse_on_off(std::string_view value) {
  value = trim(value);
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("expected on or off, got '" + std::string(value) + "'");
}

std::vector<double> parse_sweep(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty sweep");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (true) {
      const auto next = text.find(':', pos);
      parts.push_back(parse_double("sweep", text.substr(pos, next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (parts.size() != 3) throw ConfigError("sweep range must be start:step:stop");
    const double start = parts[0], step = parts[1], stop = parts[2];
    if (!(step > 0) || stop < start) throw ConfigError("sweep range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ConfigError("sweep has too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::size_t pos = 0;
    while (true) {
      const auto next = text.find(',', pos);
      out.push_back(parse_double("sweep", text.substr(pos, next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  }
  return out;
}

void apply_setting(SimConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  try {
    if (key == "mode") c.mode = parse_mode(value);
    else if (key == "profile") c.profile = parse_unsigned(key, value);
    else if (key == "mod") c.modulation = parse_modulation(value);
    else if (key == "channel") {
      channel::ChannelProfile::from_name(value);
      c.channel = std::string(value);
    }
    else if (key == "stbc") c.stbc = parse_on_off(value);
    else if (key == "cp") c.cp_divisor = parse_unsigned(key, value);
    else if (key == "oversampling") c.oversampling = parse_unsigned(key, value);
    else if (key == "ebn0") { c.sweep = parse_sweep(value); c.axis = SnrAxis::ebn0; }
    else if (key == "esn0") { c.sweep = parse_sweep(value); c.axis = SnrAxis::esn0; }
    else if (key == "count-overhead") c.count_overhead = parse_on_off(value);
    else if (key == "seed") c.seed = parse_count(key, value);
    else if (key == "max-bits") c.max_bits = parse_count(key, value);
    else if (key == "min-errors") c.min_errors = parse_count(key, value);
    else if (key == "min-bits") c.min_bits = parse_count(key, value);
    else if (key == "max-frames") c.max_frames = parse_count(key, value);
    else if (key == "security") c.security = parse_on_off(value);
    else if (key == "enc-key") c.enc_key = secmac::parse_hex_key(value);
    else if (key == "mac-key") c.mac_key = secmac::parse_hex_key(value);
    else if (key == "mac-bits") c.mac_bits = parse_unsigned(key, value);
    else if (key == "tamper") c.tamper = parse_on_off(value);
    else if (key == "csi") c.csi = parse_csi(value);
    else if (key == "pairs") c.data_pairs = parse_unsigned(key, value);
    else if (key == "coherence") c.coherence = parse_unsigned(key, value);
    else if (key == "freeze-channel") c.freeze_channel = parse_on_off(value);
    else if (key == "realizations") c.realizations = parse_unsigned(key, value);
    else if (key == "threads") c.threads = parse_unsigned(key, value);
    else throw ConfigError("unknown setting '" + std::string(key) + "'");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

fec::Modulation SimConfig::effective_modulation() const {
  if (profile) return fec::profile(*profile).modulation;
  return modulation.value_or(fec::Modulation::qam16);
}

std::size_t SimConfig::burst_capacity_bytes() const {
  if (profile) {
    const auto& p = fec::profile(*profile);
    return static_cast<std::size_t>(data_symbols() / p.symbols_per_block) * p.rs_k;
  }
  return static_cast<std::size_t>(data_symbols()) * modem::kDataCarriers *
         fec::bits_per_point(effective_modulation()) / 8;
}

std::size_t SimConfig::payload_bytes() const {
  const std::size_t capacity = burst_capacity_bytes();
  if (!security) return capacity;
  std::size_t p = 0;
  while (secmac::sealed_size(p + 1) <= capacity) ++p;
  return p;
}

channel::ChannelProfile SimConfig::channel_profile() const {
  auto p = channel::ChannelProfile::from_name(channel);
  p.coherence = coherence == 0 ? burst_symbols() : coherence;
  return p;
}

void SimConfig::validate() const {
  if (sweep.empty()) throw ConfigError("sweep must not be empty");
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (!(sweep[i] > sweep[i - 1])) throw ConfigError("sweep must be strictly increasing");
  if (seed < 1) throw ConfigError("seed must be a positive integer");
  if (max_bits < 10'000) throw ConfigError("max-bits must be at least 10000");
  if (cp_divisor != 4 && cp_divisor != 8 && cp_divisor != 16 && cp_divisor != 32)
    throw ConfigError("cp must be 4, 8, 16 or 32");
  if (oversampling != 1 && oversampling != 2) throw ConfigError("oversampling must be 1 or 2");
  if (profile && *profile >= fec::profiles().size())
    throw ConfigError("unknown profile " + std::to_string(*profile) + " (see --list-profiles)");
  if (profile && modulation && *modulation != fec::profile(*profile).modulation)
    throw ConfigError("mod does not match the constellation of the selected profile");
  try {
    channel::ChannelProfile::from_name(channel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (mac_bits < secmac::kMinMacBits || mac_bits > secmac::kMaxMacBits)
    throw ConfigError("mac-bits must be between 16 and 64");
  if (data_pairs < 1 || data_pairs > 1024) throw ConfigError("pairs must be between 1 and 1024");
  if (profile && *profile < fec::profiles().size() &&
      data_symbols() % fec::profile(*profile).symbols_per_block != 0)
    throw ConfigError("burst length is not a whole number of FEC blocks for this profile");
  if (realizations < 1) throw ConfigError("realizations must be at least 1");
  if (security) {
    if (secmac::Des(enc_key).key_fingerprint() == secmac::Des(mac_key).key_fingerprint())
      throw ConfigError("enc-key and mac-key must differ");
    if (payload_bytes() < 1) throw ConfigError("burst too small for a sealed frame");
  }
  if (tamper && !security) throw ConfigError("tamper requires security on");
  if (mode == Mode::semianalytic && (profile || security))
    throw ConfigError("semianalytic mode supports only the uncoded, unsecured chain");
}

}  // namespace wimax::harness
