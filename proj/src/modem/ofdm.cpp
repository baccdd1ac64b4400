#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wimax/modem.hpp"

namespace wimax::modem {

namespace {

constexpr std::array<int, kPilotCarriers> kPilotIndex{-88, -63, -38, -13, 13, 38, 63, 88};
// Polarity of each pilot relative to the per-symbol PRBS bit.
constexpr std::array<int, kPilotCarriers> kPilotSign{1, -1, 1, -1, -1, -1, 1, 1};
constexpr int kEdge = 100;

struct Plans {
  fftw_plan forward;
  fftw_plan backward;
  Plans() {
    std::vector<fftw_complex> a(kFftSize), b(kFftSize);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_1d(kFftSize, a.data(), b.data(), FFTW_FORWARD, flags);
    backward = fftw_plan_dft_1d(kFftSize, a.data(), b.data(), FFTW_BACKWARD, flags);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

// Planning is not thread-safe in FFTW; executing an existing plan on new
// arrays is.
const Plans& plans() {
  static const Plans p;
  return p;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

int PilotState::next_polarity() noexcept {
  const unsigned fb = ((reg >> 10) ^ (reg >> 8)) & 1u;
  reg = static_cast<std::uint16_t>(((reg << 1) | fb) & 0x7FFu);
  return fb ? -1 : 1;
}

OfdmGrid::OfdmGrid(unsigned cp_divisor, unsigned oversampling)
    : cp_divisor_(cp_divisor), oversampling_(oversampling) {
  if (cp_divisor != 4 && cp_divisor != 8 && cp_divisor != 16 && cp_divisor != 32)
    throw std::invalid_argument("cyclic prefix divisor must be 4, 8, 16 or 32");
  if (oversampling != 1 && oversampling != 2)
    throw std::invalid_argument("oversampling must be 1 or 2");
  pilots_.assign(kPilotIndex.begin(), kPilotIndex.end());
  for (int c = -static_cast<int>(kFftSize) / 2; c < static_cast<int>(kFftSize) / 2; ++c) {
    if (std::find(kPilotIndex.begin(), kPilotIndex.end(), c) != kPilotIndex.end()) continue;
    if (c == 0 || c < -kEdge || c > kEdge)
      nulls_.push_back(c);
    else
      data_.push_back(c);
  }
  if (data_.size() != kDataCarriers || pilots_.size() != kPilotCarriers ||
      nulls_.size() != kNullCarriers)
    throw std::logic_error("OFDM carrier partition is inconsistent");
  plans();
}

double OfdmGrid::carrier_gain() noexcept {
  return std::sqrt(static_cast<double>(kFftSize) / kUsedCarriers);
}

std::vector<cplx> OfdmGrid::assemble(std::span<const cplx> data, std::span<const cplx> pilots) const {
  if (data.size() != kDataCarriers) throw std::invalid_argument("OFDM symbol needs 192 data values");
  if (pilots.size() != kPilotCarriers) throw std::invalid_argument("OFDM symbol needs 8 pilot values");
  std::vector<cplx> bins(kFftSize);
  for (std::size_t i = 0; i < data_.size(); ++i) bins[bin(data_[i])] = data[i];
  for (std::size_t i = 0; i < pilots_.size(); ++i) bins[bin(pilots_[i])] = pilots[i];
  return bins;
}

std::vector<cplx> OfdmGrid::extract_data(std::span<const cplx> bins) const {
  std::vector<cplx> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = bins[bin(data_[i])];
  return out;
}

std::vector<cplx> OfdmGrid::extract_pilots(std::span<const cplx> bins) const {
  std::vector<cplx> out(pilots_.size());
  for (std::size_t i = 0; i < pilots_.size(); ++i) out[i] = bins[bin(pilots_[i])];
  return out;
}

std::vector<cplx> OfdmGrid::modulate_bins(std::span<const cplx> bins) const {
  if (bins.size() != kFftSize) throw std::invalid_argument("modulate_bins expects 256 bins");
  std::vector<cplx> in(bins.begin(), bins.end());
  std::vector<cplx> time(kFftSize);
  fftw_execute_dft(plans().backward, as_fftw(in.data()), as_fftw(time.data()));
  const double scale = carrier_gain() / std::sqrt(static_cast<double>(kFftSize));
  const unsigned cp = cp_length();
  std::vector<cplx> out;
  out.reserve(channel_symbol_length());
  for (unsigned n = 0; n < symbol_length(); ++n) {
    const cplx v = time[(n + kFftSize - cp) % kFftSize] * scale;
    for (unsigned r = 0; r < oversampling_; ++r) out.push_back(v);
  }
  return out;
}

std::vector<cplx> OfdmGrid::demodulate_bins(std::span<const cplx> samples) const {
  if (samples.size() != channel_symbol_length())
    throw std::invalid_argument("OFDM demodulate: wrong sample count");
  const unsigned cp = cp_length();
  std::vector<cplx> time(kFftSize);
  for (unsigned n = 0; n < kFftSize; ++n) {
    cplx acc = 0.0;
    for (unsigned r = 0; r < oversampling_; ++r) acc += samples[(cp + n) * oversampling_ + r];
    time[n] = acc / static_cast<double>(oversampling_);
  }
  std::vector<cplx> bins(kFftSize);
  fftw_execute_dft(plans().forward, as_fftw(time.data()), as_fftw(bins.data()));
  const double scale = 1.0 / (carrier_gain() * std::sqrt(static_cast<double>(kFftSize)));
  for (auto& b : bins) b *= scale;
  return bins;
}

std::vector<cplx> next_pilots(PilotState& state) {
  const int polarity = state.next_polarity();
  std::vector<cplx> out(kPilotCarriers);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(polarity * kPilotSign[i]);
  return out;
}

std::vector<cplx> ofdm_modulate(std::span<const cplx> data, const OfdmGrid& grid,
                                PilotState& pilot_state) {
  if (data.size() != kDataCarriers) throw std::invalid_argument("OFDM symbol needs 192 data values");
  const auto pilots = next_pilots(pilot_state);
  return grid.modulate_bins(grid.assemble(data, pilots));
}

std::vector<cplx> ofdm_modulate_no_pilots(std::span<const cplx> data, const OfdmGrid& grid) {
  const std::vector<cplx> pilots(kPilotCarriers);
  return grid.modulate_bins(grid.assemble(data, pilots));
}

OfdmSymbol ofdm_demodulate(std::span<const cplx> samples, const OfdmGrid& grid) {
  const auto bins = grid.demodulate_bins(samples);
  return {grid.extract_data(bins), grid.extract_pilots(bins)};
}

}  // namespace wimax::modem
