// Command-line front end for the BER engines.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "wimax/harness.hpp"
#include "wimax/modem.hpp"

namespace {

using namespace wimax;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kIoError = 2;

std::string constellation_csv(fec::Modulation m) {
  const auto& c = modem::Constellation::get(m);
  std::string out = "label_bits,i,q\n";
  char line[96];
  for (unsigned label = 0; label < c.size(); ++label) {
    std::string bits;
    for (unsigned b = c.bits_per_point(); b-- > 0;) bits += ((label >> b) & 1u) ? '1' : '0';
    const auto p = c.point(label);
    std::snprintf(line, sizeof line, "%s,%.17g,%.17g\n", bits.c_str(), p.real(), p.imag());
    out += line;
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw harness::IoError("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM/STBC link simulator with RS-CC coding and CBC/DAC frame security"};
  app.set_help_flag("-h,--help", "Show this help and exit");

  // Simulation settings, applied after the config file in flag order.
  const std::pair<const char*, const char*> settings[] = {
      {"mode", "theoretical | semianalytic | montecarlo"},
      {"profile", "Burst profile rate_id (coded chain)"},
      {"mod", "Constellation 16 | 32 | 64 (uncoded chain)"},
      {"channel", "nonfading | flat | dispersive"},
      {"stbc", "2x1 Alamouti on | off"},
      {"cp", "Cyclic prefix denominator 4 | 8 | 16 | 32"},
      {"ebn0", "Eb/N0 sweep in dB: start:step:stop or a,b,c"},
      {"esn0", "Sweep in per-sample Es/N0 dB instead of Eb/N0"},
      {"seed", "Master seed (positive integer)"},
      {"security", "Seal frames with CBC + DAC on | off"},
      {"enc-key", "Encryption key, 16 hex digits"},
      {"mac-key", "MAC key, 16 hex digits"},
      {"mac-bits", "DAC length in bits, 16..64"},
      {"max-bits", "Stop a point after this many bits"},
      {"min-errors", "Stop a point after this many bit errors (0 = off)"},
      {"min-bits", "Bits required before min-errors may stop a point"},
      {"max-frames", "Stop a point after this many frames (0 = off)"},
      {"tamper", "Flip one ciphertext bit per frame on | off"},
      {"csi", "auto | per-carrier | flat | perfect"},
      {"pairs", "STBC symbol pairs per burst"},
      {"coherence", "OFDM symbols per fading realization (0 = burst)"},
      {"freeze-channel", "Use one fading realization throughout on | off"},
      {"realizations", "Fading realizations for semianalytic mode"},
      {"oversampling", "Samples per symbol at the channel, 1 | 2"},
      {"count-overhead", "Charge pilots, guards and CP to Eb on | off"},
      {"threads", "Monte Carlo worker threads (0 = all cores)"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [name, help] : settings)
    options[name] = app.add_option(std::string("--") + name, values[name], help);

  std::string config_path, out_path, dat_path;
  unsigned dump_order = 0;
  app.add_option("--config", config_path, "key = value settings file (flags override it)");
  app.add_option("--out", out_path, "CSV output path (default stdout)");
  app.add_option("--dat", dat_path, "Also write gnuplot data to this path");
  auto* list = app.add_flag("--list-profiles", "Print the burst profile table and exit");
  auto* dump = app.add_option("--dump-constellation", dump_order, "Print constellation M as CSV and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kConfigError;
  }

  try {
    if (list->count() > 0) {
      emit(fec::format_profile_table(), out_path);
      return kOk;
    }
    if (dump->count() > 0) {
      if (dump_order != 16 && dump_order != 32 && dump_order != 64)
        throw harness::ConfigError("--dump-constellation expects 16, 32 or 64");
      emit(constellation_csv(static_cast<fec::Modulation>(dump_order)), out_path);
      return kOk;
    }

    harness::SimConfig config;
    if (!config_path.empty())
      for (const auto& [key, value] : harness::read_config_file(config_path))
        harness::apply_setting(config, key, value);
    for (const auto& [name, help] : settings)
      if (options[name]->count() > 0) harness::apply_setting(config, name, values[name]);

    const auto points = harness::run(config);
    emit(harness::format_csv(points), out_path);
    if (!dat_path.empty()) harness::write_dat(points, dat_path);
    return kOk;
  } catch (const harness::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
