#pragma once

// 2x1 Alamouti coding across pairs of OFDM symbols, the single dual-link
// preamble, least-squares channel estimation and the diversity combiner.
// A SISO path (antenna 1 only) is provided alongside for comparison runs.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wimax/modem.hpp"

namespace wimax::stbc {

using cplx = std::complex<double>;
using Symbol = std::vector<cplx>;

/// Per-antenna symbol sequences of equal, even length.
struct StbcPair {
  std::vector<Symbol> ant1;
  std::vector<Symbol> ant2;
};

/// Splits `symbols` into OFDM symbols of `carriers` values and codes each
/// consecutive pair (A, B): antenna 1 sends A, -B*; antenna 2 sends B, A*;
/// everything scaled by 1/sqrt(2). Throws std::invalid_argument unless the
/// count is a multiple of 2 * carriers.
StbcPair stbc_encode(std::span<const cplx> symbols, std::size_t carriers = modem::kDataCarriers);

/// Known BPSK value of every used carrier in the preamble, in ascending
/// carrier order (200 values).
std::span<const double> preamble_values();

/// One preamble symbol per antenna as 256 frequency bins. Used carriers are
/// taken in ascending order; antenna 1 sends on even positions and antenna 2
/// on odd positions, each at unit amplitude, so the summed preamble has the
/// same per-carrier power as a data symbol.
StbcPair build_preamble(const modem::OfdmGrid& grid);
/// Antenna 1 on every used carrier.
Symbol build_preamble_siso(const modem::OfdmGrid& grid);

enum class EstimatorMode {
  per_carrier,  // LS on own carriers, linear interpolation in frequency
  flat,         // one averaged coefficient per link
};

/// Channel gains on the 192 data carriers (constant vectors in flat mode).
struct ChannelEstimate {
  std::vector<cplx> h1;
  std::vector<cplx> h2;  // empty for SISO
  bool flat = false;
};

/// `bins` is the demodulated preamble (256 bins).
ChannelEstimate estimate_channel(std::span<const cplx> bins, const modem::OfdmGrid& grid,
                                 EstimatorMode mode = EstimatorMode::per_carrier);
ChannelEstimate estimate_channel_siso(std::span<const cplx> bins, const modem::OfdmGrid& grid,
                                      EstimatorMode mode = EstimatorMode::per_carrier);

/// Equalized symbols with the noise enhancement of each value: the output
/// noise variance is noise_gain times the per-carrier input noise variance.
struct Combined {
  std::vector<cplx> symbols;
  std::vector<double> noise_gain;
  std::vector<std::uint8_t> erased;
  std::size_t erasures = 0;
};

/// Combine received slots r1, r2 (192 data values each) into (s1, s2),
/// returned back to back in `symbols`. Throws on size mismatch.
Combined stbc_combine(std::span<const cplx> r1, std::span<const cplx> r2,
                      const ChannelEstimate& est);
/// Zero-forcing r / h.
Combined siso_equalize(std::span<const cplx> r, const ChannelEstimate& est);

}  // namespace wimax::stbc
