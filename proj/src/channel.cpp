#include "wimax/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wimax/kernels.hpp"

namespace wimax::channel {

ChannelProfile ChannelProfile::nonfading() { return {}; }

ChannelProfile ChannelProfile::flat_rayleigh() {
  ChannelProfile p;
  p.kind = Kind::flat;
  p.taps = {{0, 1.0, true}};
  return p;
}

ChannelProfile ChannelProfile::dispersive() {
  ChannelProfile p;
  p.kind = Kind::dispersive;
  const unsigned delays[] = {0, 2, 5};
  const double db[] = {0.0, -3.0, -6.0};
  double total = 0.0;
  for (double d : db) total += std::pow(10.0, d / 10.0);
  p.taps.clear();
  for (int i = 0; i < 3; ++i) p.taps.push_back({delays[i], std::pow(10.0, db[i] / 10.0) / total, true});
  return p;
}

ChannelProfile ChannelProfile::from_name(std::string_view name) {
  if (name == "nonfading") return nonfading();
  if (name == "flat") return flat_rayleigh();
  if (name == "dispersive") return dispersive();
  throw std::invalid_argument("unknown channel profile: " + std::string(name));
}

std::string ChannelProfile::name() const {
  switch (kind) {
    case Kind::nonfading: return "nonfading";
    case Kind::flat: return "flat";
    case Kind::dispersive: return "dispersive";
  }
  return "unknown";
}

unsigned ChannelProfile::max_delay() const noexcept {
  unsigned d = 0;
  for (const auto& t : taps) d = std::max(d, t.delay);
  return d;
}

double ChannelProfile::total_power() const noexcept {
  double p = 0.0;
  for (const auto& t : taps) p += t.power;
  return p;
}

void ChannelProfile::validate() const {
  if (taps.empty()) throw std::invalid_argument("channel profile has no taps");
  if (std::abs(total_power() - 1.0) > 1e-9) throw std::invalid_argument("tap powers must sum to 1");
  if (coherence == 0) throw std::invalid_argument("coherence must be at least one symbol");
}

bool ChannelProfile::fits_cp(const modem::OfdmGrid& grid) const noexcept {
  return max_delay() < grid.cp_length();
}

MisoChannel::MisoChannel(ChannelProfile profile, std::uint64_t seed, unsigned symbol_samples,
                         unsigned oversampling)
    : profile_(std::move(profile)), rng_(seed), symbol_samples_(symbol_samples),
      oversampling_(oversampling) {
  profile_.validate();
  if (symbol_samples_ == 0 || oversampling_ == 0) throw std::invalid_argument("bad channel geometry");
  reset();
}

void MisoChannel::reset() {
  const std::size_t h = static_cast<std::size_t>(profile_.max_delay()) * oversampling_;
  history1_.assign(h, 0.0);
  history2_.assign(h, 0.0);
  symbols_ = 0;
}

Realization MisoChannel::draw() {
  Realization r;
  for (auto* link : {&r.link1, &r.link2})
    for (const auto& t : profile_.taps)
      link->push_back(t.rayleigh ? rng_.complex_gaussian(t.power) : cplx(std::sqrt(t.power), 0.0));
  return r;
}

void MisoChannel::maybe_redraw() {
  if (frozen_) return;
  if (!have_realization_ || symbols_ % profile_.coherence == 0) {
    current_ = draw();
    have_realization_ = true;
  }
}

void MisoChannel::freeze(Realization r) {
  if (r.link1.size() != profile_.taps.size() || r.link2.size() != profile_.taps.size())
    throw std::invalid_argument("frozen realization must have one gain per tap and link");
  current_ = std::move(r);
  frozen_ = true;
  have_realization_ = true;
}

void MisoChannel::convolve(std::span<const cplx> in, const std::vector<cplx>& taps,
                           std::vector<cplx>& history, std::span<cplx> out, std::size_t offset) {
  // `in` is history || new input; `offset` is the first output sample.
  const std::size_t h = history.size();
  const auto& kern = kernels::active();
  for (std::size_t t = 0; t < taps.size(); ++t) {
    const std::size_t d = static_cast<std::size_t>(profile_.taps[t].delay) * oversampling_;
    kern.cmul_accumulate(out.data() + offset, in.data() + h + offset - d, taps[t], symbol_samples_);
  }
}

std::vector<cplx> MisoChannel::apply(std::span<const cplx> ant1, std::span<const cplx> ant2) {
  if (ant1.size() != ant2.size()) throw std::invalid_argument("antenna streams differ in length");
  if (ant1.size() % symbol_samples_ != 0)
    throw std::invalid_argument("channel input is not a whole number of OFDM symbols");
  std::vector<cplx> ext1(history1_), ext2(history2_);
  ext1.insert(ext1.end(), ant1.begin(), ant1.end());
  ext2.insert(ext2.end(), ant2.begin(), ant2.end());
  std::vector<cplx> out(ant1.size());
  for (std::size_t offset = 0; offset < out.size(); offset += symbol_samples_) {
    maybe_redraw();
    convolve(ext1, current_.link1, history1_, out, offset);
    convolve(ext2, current_.link2, history2_, out, offset);
    ++symbols_;
  }
  const std::size_t h = history1_.size();
  std::copy(ext1.end() - static_cast<std::ptrdiff_t>(h), ext1.end(), history1_.begin());
  std::copy(ext2.end() - static_cast<std::ptrdiff_t>(h), ext2.end(), history2_.begin());
  return out;
}

std::vector<cplx> MisoChannel::apply_siso(std::span<const cplx> ant1) {
  if (ant1.size() % symbol_samples_ != 0)
    throw std::invalid_argument("channel input is not a whole number of OFDM symbols");
  std::vector<cplx> ext1(history1_);
  ext1.insert(ext1.end(), ant1.begin(), ant1.end());
  std::vector<cplx> out(ant1.size());
  for (std::size_t offset = 0; offset < out.size(); offset += symbol_samples_) {
    maybe_redraw();
    convolve(ext1, current_.link1, history1_, out, offset);
    ++symbols_;
  }
  const std::size_t h = history1_.size();
  std::copy(ext1.end() - static_cast<std::ptrdiff_t>(h), ext1.end(), history1_.begin());
  std::fill(history2_.begin(), history2_.end(), 0.0);
  return out;
}

std::vector<cplx> MisoChannel::frequency_response(unsigned link) const {
  if (link != 1 && link != 2) throw std::invalid_argument("frequency_response: link must be 1 or 2");
  const auto& taps = link == 1 ? current_.link1 : current_.link2;
  std::vector<cplx> h(modem::kFftSize);
  for (unsigned k = 0; k < modem::kFftSize; ++k)
    for (std::size_t t = 0; t < taps.size(); ++t)
      h[k] += taps[t] * std::polar(1.0, -2.0 * std::numbers::pi * k * profile_.taps[t].delay /
                                            modem::kFftSize);
  return h;
}

double noise_variance(double esn0_db, double measured_es) noexcept {
  if (std::isinf(esn0_db) && esn0_db > 0) return 0.0;
  return measured_es / std::pow(10.0, esn0_db / 10.0);
}

void add_awgn(std::span<cplx> samples, double esn0_db, double measured_es, Rng& rng,
              double variance_scale) {
  const double n0 = variance_scale * noise_variance(esn0_db, measured_es);
  if (n0 == 0.0) return;
  for (auto& s : samples) s += rng.complex_gaussian(n0);
}

void add_awgn(std::span<cplx> samples, const NoiseConfig& noise, double measured_es) {
  Rng rng(noise.seed);
  add_awgn(samples, noise.esn0_db, measured_es, rng);
}

double mean_power(std::span<const cplx> samples) noexcept {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& s : samples) acc += std::norm(s);
  return acc / static_cast<double>(samples.size());
}

double ebn0_to_esn0(double ebn0_db, double bits_per_point, double code_rate,
                    const modem::OfdmGrid* grid) {
  double factor = bits_per_point * code_rate;
  if (grid) factor *= static_cast<double>(modem::kDataCarriers) / modem::kFftSize * (1.0 / (1.0 + grid->cp_ratio()));
  return ebn0_db + 10.0 * std::log10(factor);
}

double ebn0_to_esn0(double ebn0_db, const fec::BurstProfile& profile, const modem::OfdmGrid& grid) {
  return ebn0_to_esn0(ebn0_db, profile.bits_per_point(), profile.code_rate(), &grid);
}

}  // namespace wimax::channel
