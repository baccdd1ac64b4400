#include "wimax/stbc.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wimax/kernels.hpp"

namespace wimax::stbc {

namespace {

// Used carriers in ascending order and their positions in the grid.
std::vector<int> used_carriers(const modem::OfdmGrid& grid) {
  std::vector<int> used(grid.data_carriers().begin(), grid.data_carriers().end());
  used.insert(used.end(), grid.pilot_carriers().begin(), grid.pilot_carriers().end());
  std::sort(used.begin(), used.end());
  return used;
}

// Linear interpolation of samples (x_i, y_i), x ascending, clamped at the ends.
cplx interpolate(std::span<const int> x, std::span<const cplx> y, int at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = static_cast<double>(at - x[lo]) / static_cast<double>(x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

// LS estimates on carriers `used[pos]` for pos = first, first + step, ...,
// then resolved onto the data carriers.
std::vector<cplx> estimate_link(std::span<const cplx> bins, const modem::OfdmGrid& grid,
                                std::span<const int> used, std::size_t first, std::size_t step,
                                EstimatorMode mode) {
  const auto values = preamble_values();
  std::vector<int> x;
  std::vector<cplx> y;
  for (std::size_t pos = first; pos < used.size(); pos += step) {
    x.push_back(used[pos]);
    y.push_back(bins[modem::OfdmGrid::bin(used[pos])] / values[pos]);
  }
  std::vector<cplx> h(grid.data_carriers().size());
  if (mode == EstimatorMode::flat) {
    cplx mean = 0.0;
    for (const auto& v : y) mean += v;
    mean /= static_cast<double>(y.size());
    std::fill(h.begin(), h.end(), mean);
  } else {
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = interpolate(x, y, grid.data_carriers()[i]);
  }
  return h;
}

}  // namespace

StbcPair stbc_encode(std::span<const cplx> symbols, std::size_t carriers) {
  if (carriers == 0 || symbols.size() % (2 * carriers) != 0)
    throw std::invalid_argument("stbc_encode: symbol count must fill whole symbol pairs");
  const double a = 1.0 / std::numbers::sqrt2;
  StbcPair out;
  for (std::size_t base = 0; base < symbols.size(); base += 2 * carriers) {
    Symbol a1(carriers), a1b(carriers), a2(carriers), a2b(carriers);
    for (std::size_t i = 0; i < carriers; ++i) {
      const cplx s1 = symbols[base + i];
      const cplx s2 = symbols[base + carriers + i];
      a1[i] = a * s1;
      a1b[i] = -a * std::conj(s2);
      a2[i] = a * s2;
      a2b[i] = a * std::conj(s1);
    }
    out.ant1.push_back(std::move(a1));
    out.ant1.push_back(std::move(a1b));
    out.ant2.push_back(std::move(a2));
    out.ant2.push_back(std::move(a2b));
  }
  return out;
}

std::span<const double> preamble_values() {
  static const std::array<double, modem::kUsedCarriers> values = [] {
    std::array<double, modem::kUsedCarriers> v{};
    modem::PilotState prbs;
    for (auto& x : v) x = static_cast<double>(prbs.next_polarity());
    return v;
  }();
  return values;
}

StbcPair build_preamble(const modem::OfdmGrid& grid) {
  const auto used = used_carriers(grid);
  const auto values = preamble_values();
  Symbol ant1(modem::kFftSize), ant2(modem::kFftSize);
  for (std::size_t pos = 0; pos < used.size(); ++pos)
    (pos % 2 == 0 ? ant1 : ant2)[modem::OfdmGrid::bin(used[pos])] = values[pos];
  StbcPair out;
  out.ant1.push_back(std::move(ant1));
  out.ant2.push_back(std::move(ant2));
  return out;
}

Symbol build_preamble_siso(const modem::OfdmGrid& grid) {
  const auto used = used_carriers(grid);
  const auto values = preamble_values();
  Symbol bins(modem::kFftSize);
  for (std::size_t pos = 0; pos < used.size(); ++pos) bins[modem::OfdmGrid::bin(used[pos])] = values[pos];
  return bins;
}

ChannelEstimate estimate_channel(std::span<const cplx> bins, const modem::OfdmGrid& grid,
                                 EstimatorMode mode) {
  if (bins.size() != modem::kFftSize) throw std::invalid_argument("estimate_channel expects 256 bins");
  const auto used = used_carriers(grid);
  ChannelEstimate est;
  est.h1 = estimate_link(bins, grid, used, 0, 2, mode);
  est.h2 = estimate_link(bins, grid, used, 1, 2, mode);
  est.flat = mode == EstimatorMode::flat;
  return est;
}

ChannelEstimate estimate_channel_siso(std::span<const cplx> bins, const modem::OfdmGrid& grid,
                                      EstimatorMode mode) {
  if (bins.size() != modem::kFftSize) throw std::invalid_argument("estimate_channel expects 256 bins");
  const auto used = used_carriers(grid);
  ChannelEstimate est;
  est.h1 = estimate_link(bins, grid, used, 0, 1, mode);
  est.flat = mode == EstimatorMode::flat;
  return est;
}

Combined stbc_combine(std::span<const cplx> r1, std::span<const cplx> r2, const ChannelEstimate& est) {
  const std::size_t n = r1.size();
  if (r2.size() != n || est.h1.size() != n || est.h2.size() != n)
    throw std::invalid_argument("stbc_combine: size mismatch");
  Combined out;
  out.symbols.resize(2 * n);
  out.noise_gain.resize(2 * n);
  out.erased.resize(2 * n);
  out.erasures = kernels::active().alamouti_combine(r1.data(), r2.data(), est.h1.data(), est.h2.data(),
                                                    out.symbols.data(), out.symbols.data() + n,
                                                    out.noise_gain.data(), out.erased.data(), n);
  std::copy_n(out.noise_gain.begin(), n, out.noise_gain.begin() + n);
  std::copy_n(out.erased.begin(), n, out.erased.begin() + n);
  out.erasures *= 2;
  return out;
}

Combined siso_equalize(std::span<const cplx> r, const ChannelEstimate& est) {
  const std::size_t n = r.size();
  if (est.h1.size() != n) throw std::invalid_argument("siso_equalize: size mismatch");
  Combined out;
  out.symbols.resize(n);
  out.noise_gain.resize(n);
  out.erased.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::norm(est.h1[i]);
    if (!(d >= 1e-12)) {
      out.noise_gain[i] = std::numeric_limits<double>::infinity();
      out.erased[i] = 1;
      ++out.erasures;
      continue;
    }
    out.symbols[i] = r[i] / est.h1[i];
    out.noise_gain[i] = 1.0 / d;
  }
  return out;
}

}  // namespace wimax::stbc
