#pragma once

// End-to-end chain assembly and the three BER engines: closed form,
// semianalytic (noiseless chain plus analytic noise) and Monte Carlo.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wimax/channel.hpp"
#include "wimax/fec.hpp"
#include "wimax/stbc.hpp"

namespace wimax::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { theoretical, semianalytic, montecarlo };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

/// How the receiver obtains channel state.
enum class Csi {
  automatic,    // flat estimator for nonfading/flat channels, per-carrier otherwise
  per_carrier,  // preamble LS with interpolation
  flat,         // preamble LS averaged to one gain per link
  perfect,      // true frequency response
};
std::string_view to_string(Csi c);
Csi parse_csi(std::string_view s);

/// Which quantity the sweep values denote.
enum class SnrAxis {
  ebn0,  // energy per information bit on the data carriers
  esn0,  // energy per transmitted sample, as applied to the channel
};

struct SimConfig {
  Mode mode = Mode::montecarlo;
  /// Burst profile for the coded chain; unset means uncoded.
  std::optional<unsigned> profile;
  /// Constellation for uncoded runs (must match the profile when both are set).
  std::optional<fec::Modulation> modulation;
  std::string channel = "nonfading";
  bool stbc = false;
  unsigned cp_divisor = 4;
  unsigned oversampling = 1;
  std::vector<double> sweep{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  SnrAxis axis = SnrAxis::ebn0;
  /// Charge pilots, guards and cyclic prefix to the bit energy.
  bool count_overhead = false;
  std::uint64_t seed = 1;

  std::uint64_t max_bits = 10'000'000;
  std::uint64_t min_errors = 100;
  /// Bits that must be counted before min_errors can stop a point.
  std::uint64_t min_bits = 0;
  /// 0 = unlimited.
  std::uint64_t max_frames = 0;

  bool security = false;
  std::uint64_t enc_key = 0x0123456789ABCDEFull;
  std::uint64_t mac_key = 0xFEDCBA9876543210ull;
  unsigned mac_bits = 32;
  /// Flip one ciphertext bit per frame before FEC.
  bool tamper = false;

  Csi csi = Csi::automatic;
  /// STBC symbol pairs per burst (after the single preamble).
  unsigned data_pairs = 4;
  /// OFDM symbols per fading realization; 0 = whole burst.
  unsigned coherence = 0;
  /// Keep one fading realization for every frame and point.
  bool freeze_channel = false;
  /// Fading realizations averaged by the semianalytic engine.
  unsigned realizations = 1;
  /// Worker threads for Monte Carlo; 0 = hardware concurrency. Results do
  /// not depend on this value.
  unsigned threads = 0;

  /// Throws ConfigError.
  void validate() const;
  fec::Modulation effective_modulation() const;
  bool coded() const noexcept { return profile.has_value(); }
  unsigned data_symbols() const noexcept { return 2 * data_pairs; }
  /// OFDM symbols per burst, preamble included.
  unsigned burst_symbols() const noexcept { return 1 + data_symbols(); }
  /// Bytes the modulated burst can carry (after FEC when coded).
  std::size_t burst_capacity_bytes() const;
  /// Payload bytes per frame (smaller than the capacity when sealed).
  std::size_t payload_bytes() const;
  channel::ChannelProfile channel_profile() const;
};

/// Apply one `key = value` setting; keys match the long CLI flags without
/// dashes (e.g. "mode", "ebn0", "max-bits"). Throws ConfigError.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);
/// Parse `key = value` lines with `#` comments. Throws ConfigError for bad
/// lines; IoError when the file cannot be read.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

/// "start:step:stop" (inclusive stop) or "a,b,c". Throws ConfigError.
std::vector<double> parse_sweep(std::string_view text);
bool parse_on_off(std::string_view value);

struct BerPoint {
  Mode mode = Mode::theoretical;
  double ebn0_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t auth_failures = 0;
  /// Mean transmitted sample power over the point (Monte Carlo only).
  double tx_power = 0.0;
};

/// Linear SNR conversions used by the engines.
struct SnrModel {
  /// Per-sample Es/N0 at the channel input for a sweep value, in dB.
  double channel_esn0_db(double sweep_value) const;
  /// Eb/N0 that corresponds to a sweep value, in dB.
  double ebn0_db(double sweep_value) const;
  /// Noise variance on one demodulated data carrier for a sweep value.
  double carrier_noise_variance(double sweep_value) const;

  double bits_per_point;
  double code_rate;
  bool count_overhead;
  SnrAxis axis;
  const modem::OfdmGrid* grid;
};

std::vector<BerPoint> run_theoretical(const SimConfig& config);
/// Throws ConfigError for coded configurations.
std::vector<BerPoint> run_semianalytic(const SimConfig& config);
std::vector<BerPoint> run_montecarlo(const SimConfig& config);
/// Dispatch on config.mode after validate().
std::vector<BerPoint> run(const SimConfig& config);

/// Outcome of one Monte Carlo frame.
struct FrameOutcome {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  bool frame_error = false;
  bool auth_failure = false;
  double tx_energy = 0.0;
  std::uint64_t tx_samples = 0;
};
/// Frame `frame` of sweep point `point`; deterministic in (config.seed, point, frame).
FrameOutcome simulate_frame(const SimConfig& config, std::size_t point, std::uint64_t frame);

inline constexpr std::string_view kCsvHeader =
    "mode,ebn0_db,bits,bit_errors,ber,frames,frame_errors,auth_failures";

std::string format_csv(std::span<const BerPoint> points);
void write_csv(std::span<const BerPoint> points, std::ostream& out);
/// Throws IoError.
void write_csv(std::span<const BerPoint> points, const std::string& path);
/// Throws std::invalid_argument on malformed input.
std::vector<BerPoint> parse_csv(std::string_view text);
/// Whitespace-separated "ebn0 ber" lines for gnuplot.
void write_dat(std::span<const BerPoint> points, std::ostream& out);
void write_dat(std::span<const BerPoint> points, const std::string& path);

}  // namespace wimax::harness
