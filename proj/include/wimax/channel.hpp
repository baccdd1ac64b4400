#pragma once

// Two-link MISO fading (each link its own tap realization, same profile)
// summed at one receiver, plus AWGN.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wimax/fec.hpp"
#include "wimax/modem.hpp"
#include "wimax/rng.hpp"

namespace wimax::channel {

using cplx = std::complex<double>;

enum class Kind { nonfading, flat, dispersive };

struct Tap {
  unsigned delay;  // base-rate samples
  double power;    // linear mean power
  bool rayleigh;
};

struct ChannelProfile {
  Kind kind = Kind::nonfading;
  std::vector<Tap> taps{{0, 1.0, false}};
  /// OFDM symbols per fading realization.
  unsigned coherence = 2;

  static ChannelProfile nonfading();
  static ChannelProfile flat_rayleigh();
  /// Taps at 0, 2, 5 samples with 0, -3, -6 dB, normalized to unit power.
  static ChannelProfile dispersive();
  /// Throws std::invalid_argument for names other than nonfading, flat, dispersive.
  static ChannelProfile from_name(std::string_view name);

  std::string name() const;
  unsigned max_delay() const noexcept;
  double total_power() const noexcept;
  /// Throws std::invalid_argument when tap powers do not sum to 1 (1e-9) or
  /// coherence is zero.
  void validate() const;
  /// True when the delay spread fits the cyclic prefix of `grid`.
  bool fits_cp(const modem::OfdmGrid& grid) const noexcept;
};

/// One tap realization per link.
struct Realization {
  std::vector<cplx> link1;
  std::vector<cplx> link2;
};

/// Stateful MISO channel. Convolution runs continuously across calls;
/// realizations are redrawn at the start of every `coherence` OFDM symbols
/// unless frozen. Not shareable across threads.
class MisoChannel {
 public:
  /// `symbol_samples` is the OFDM symbol length at the channel boundary;
  /// tap delays are multiplied by `oversampling`.
  MisoChannel(ChannelProfile profile, std::uint64_t seed, unsigned symbol_samples,
              unsigned oversampling = 1);

  /// Received samples: link1 * ant1 + link2 * ant2. Lengths must match and
  /// be whole OFDM symbols. Throws std::invalid_argument otherwise.
  std::vector<cplx> apply(std::span<const cplx> ant1, std::span<const cplx> ant2);
  /// Antenna 1 only (link 2 unused).
  std::vector<cplx> apply_siso(std::span<const cplx> ant1);

  /// Fix the taps for all subsequent symbols; unfreeze() resumes redrawing.
  void freeze(Realization r);
  void unfreeze() noexcept { frozen_ = false; }
  const Realization& current() const noexcept { return current_; }
  /// Frequency response of link 1 or 2 on the 256 FFT bins at the base rate.
  /// Throws std::invalid_argument for any other link.
  std::vector<cplx> frequency_response(unsigned link) const;
  /// Clear the delay lines and restart the coherence counter.
  void reset();

 private:
  Realization draw();
  void maybe_redraw();
  void convolve(std::span<const cplx> in, const std::vector<cplx>& taps, std::vector<cplx>& history,
                std::span<cplx> out, std::size_t offset);

  ChannelProfile profile_;
  Rng rng_;
  unsigned symbol_samples_;
  unsigned oversampling_;
  Realization current_;
  bool frozen_ = false;
  bool have_realization_ = false;
  std::uint64_t symbols_ = 0;
  std::vector<cplx> history1_, history2_;  // last max_delay input samples
};

struct NoiseConfig {
  double esn0_db;  // +inf disables noise
  double signal_power_watts = 1.0;
  std::uint64_t seed = 1;
};

/// N0 = measured_es / 10^(esn0_db / 10); 0 for +inf.
double noise_variance(double esn0_db, double measured_es) noexcept;
/// Adds circular complex Gaussian noise of variance
/// variance_scale * noise_variance(esn0_db, measured_es).
void add_awgn(std::span<cplx> samples, double esn0_db, double measured_es, Rng& rng,
              double variance_scale = 1.0);
/// Same with a generator seeded from noise.seed.
void add_awgn(std::span<cplx> samples, const NoiseConfig& noise, double measured_es);
/// Mean |x|^2.
double mean_power(std::span<const cplx> samples) noexcept;

/// Es/N0 = Eb/N0 + 10 log10(bits_per_point * code_rate), further multiplied
/// by 192/256 * 1/(1 + G) when a grid is given.
double ebn0_to_esn0(double ebn0_db, double bits_per_point, double code_rate,
                    const modem::OfdmGrid* grid = nullptr);
double ebn0_to_esn0(double ebn0_db, const fec::BurstProfile& profile, const modem::OfdmGrid& grid);

}  // namespace wimax::channel
