#pragma once

// Gray-labeled QAM mapping and the 256-point OFDM symbol.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wimax/fec.hpp"

namespace wimax::modem {

using cplx = std::complex<double>;
using fec::Modulation;

/// Unit-energy constellation. Point index equals the label; the label's bits
/// are read MSB first from the bit stream.
class Constellation {
 public:
  explicit Constellation(Modulation m);
  /// Shared immutable instance.
  static const Constellation& get(Modulation m);

  Modulation modulation() const noexcept { return modulation_; }
  unsigned size() const noexcept { return static_cast<unsigned>(points_.size()); }
  unsigned bits_per_point() const noexcept { return bits_; }
  cplx point(unsigned label) const { return points_.at(label); }
  std::span<const cplx> points() const noexcept { return points_; }
  std::span<const double> in_phase() const noexcept { return i_; }
  std::span<const double> quadrature() const noexcept { return q_; }
  /// Scale from the odd-integer lattice to unit energy.
  double scale() const noexcept { return scale_; }
  /// Smallest distance between two points.
  double min_distance() const noexcept { return 2.0 * scale_; }

 private:
  Modulation modulation_;
  unsigned bits_;
  double scale_;
  std::vector<cplx> points_;
  std::vector<double> i_, q_;
};

/// Throws std::invalid_argument when bits.size() is not a multiple of log2(M).
std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Modulation m);
/// Nearest-point labels; exact ties go to the lower label.
std::vector<std::uint16_t> qam_demap_labels(std::span<const cplx> samples, Modulation m);
/// Hard decisions, MSB first. Samples flagged in `erased` (same length, or
/// empty) produce fec::kErasure for all their bits.
fec::Bits qam_demap(std::span<const cplx> samples, Modulation m,
                    std::span<const std::uint8_t> erased = {});

/// Gaussian tail probability.
double q_function(double x) noexcept;
/// Gray-coded M-QAM bit error probability over AWGN (nearest-neighbor form).
double theoretical_ber(Modulation m, double ebn0_db);
/// Same, for a linear per-bit SNR.
double theoretical_ber_linear(Modulation m, double ebn0);
/// Average number of (neighbor, differing bit) pairs at minimum distance
/// per point; the coefficient of the nearest-neighbor approximation.
double nearest_neighbor_bit_weight(Modulation m);

// --- OFDM ---------------------------------------------------------------------

inline constexpr unsigned kFftSize = 256;
inline constexpr unsigned kDataCarriers = 192;
inline constexpr unsigned kPilotCarriers = 8;
inline constexpr unsigned kUsedCarriers = kDataCarriers + kPilotCarriers;
inline constexpr unsigned kNullCarriers = kFftSize - kUsedCarriers;

/// Pilot polarity generator x^11 + x^9 + 1, all-ones start. One bit per
/// OFDM symbol; pilots on that symbol are +1 for bit 0 and -1 for bit 1,
/// times the per-carrier pattern.
struct PilotState {
  std::uint16_t reg = 0x7FF;
  int next_polarity() noexcept;
};

/// Carrier layout, cyclic prefix and optional oversampling. Logical carrier
/// index c runs -128..127; c maps to FFT bin (c + 256) mod 256.
class OfdmGrid {
 public:
  /// cp_divisor is 1/G (4, 8, 16 or 32); oversampling is 1 or 2.
  explicit OfdmGrid(unsigned cp_divisor = 4, unsigned oversampling = 1);

  unsigned cp_divisor() const noexcept { return cp_divisor_; }
  double cp_ratio() const noexcept { return 1.0 / cp_divisor_; }
  unsigned oversampling() const noexcept { return oversampling_; }
  unsigned cp_length() const noexcept { return kFftSize / cp_divisor_; }
  /// Samples per OFDM symbol at the base rate: 256 (1 + G).
  unsigned symbol_length() const noexcept { return kFftSize + cp_length(); }
  /// Samples per OFDM symbol at the channel boundary.
  unsigned channel_symbol_length() const noexcept { return symbol_length() * oversampling_; }

  std::span<const int> data_carriers() const noexcept { return data_; }
  std::span<const int> pilot_carriers() const noexcept { return pilots_; }
  std::span<const int> null_carriers() const noexcept { return nulls_; }
  static unsigned bin(int carrier) noexcept {
    return static_cast<unsigned>((carrier + static_cast<int>(kFftSize)) % static_cast<int>(kFftSize));
  }
  /// Amplitude applied on every used carrier so mean sample power is 1.
  static double carrier_gain() noexcept;

  /// 256 bins from 192 data values and 8 pilot values (nulls zero).
  std::vector<cplx> assemble(std::span<const cplx> data, std::span<const cplx> pilots) const;
  std::vector<cplx> extract_data(std::span<const cplx> bins) const;
  std::vector<cplx> extract_pilots(std::span<const cplx> bins) const;

  /// Unitary inverse FFT of 256 bins, scaled by carrier_gain, CP prepended,
  /// then oversampled. Output length channel_symbol_length().
  std::vector<cplx> modulate_bins(std::span<const cplx> bins) const;
  /// Inverse of modulate_bins.
  std::vector<cplx> demodulate_bins(std::span<const cplx> samples) const;

 private:
  unsigned cp_divisor_;
  unsigned oversampling_;
  std::vector<int> data_, pilots_, nulls_;
};

/// BPSK pilot values for one symbol, advancing the state.
std::vector<cplx> next_pilots(PilotState& state);

/// 192 data symbols plus pilots from `pilot_state` into one OFDM symbol.
/// Throws std::invalid_argument on a wrong symbol count.
std::vector<cplx> ofdm_modulate(std::span<const cplx> data, const OfdmGrid& grid,
                                PilotState& pilot_state);
/// Same with pilots switched off.
std::vector<cplx> ofdm_modulate_no_pilots(std::span<const cplx> data, const OfdmGrid& grid);

struct OfdmSymbol {
  std::vector<cplx> data;    // 192
  std::vector<cplx> pilots;  // 8
};
/// Throws std::invalid_argument unless samples.size() == channel_symbol_length().
OfdmSymbol ofdm_demodulate(std::span<const cplx> samples, const OfdmGrid& grid);

}  // namespace wimax::modem
