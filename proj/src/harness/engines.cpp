#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "wimax/harness.hpp"
#include "wimax/modem.hpp"
#include "wimax/rng.hpp"
#include "wimax/secmac.hpp"

namespace wimax::harness {

namespace {

using cplx = std::complex<double>;
constexpr std::uint64_t kFrozenLabel = 0x66726f7a;  // separates the frozen draw from per-frame draws

// Transmit chain is scaled so the mean sample power is 1 W.
constexpr double kNominalSamplePower = 1.0;
double linear_to_db(double x) { return 10.0 * std::log10(x); }

SnrModel snr_model(const SimConfig& c, const modem::OfdmGrid& grid, bool uncoded) {
  const double rate = (uncoded || !c.profile) ? 1.0 : fec::profile(*c.profile).code_rate();
  return {static_cast<double>(fec::bits_per_point(c.effective_modulation())), rate, c.count_overhead,
          c.axis, &grid};
}

stbc::EstimatorMode estimator_for(const SimConfig& c) {
  switch (c.csi) {
    case Csi::flat: return stbc::EstimatorMode::flat;
    case Csi::per_carrier: return stbc::EstimatorMode::per_carrier;
    case Csi::automatic:
    case Csi::perfect:
      break;
  }
  return c.channel == "dispersive" ? stbc::EstimatorMode::per_carrier : stbc::EstimatorMode::flat;
}

channel::MisoChannel make_channel(const SimConfig& c, const modem::OfdmGrid& grid, std::uint64_t seed) {
  channel::MisoChannel ch(c.channel_profile(), seed, grid.channel_symbol_length(), grid.oversampling());
  if (c.freeze_channel) {
    channel::MisoChannel source(c.channel_profile(), Rng::derive_seed(c.seed, {kFrozenLabel}),
                                grid.channel_symbol_length(), grid.oversampling());
    const std::vector<cplx> silence(grid.channel_symbol_length());
    source.apply(silence, silence);
    ch.freeze(source.current());
  }
  return ch;
}

// Transmitted burst: one preamble then the data symbols, per antenna, as
// channel-rate samples.
struct Burst {
  std::vector<cplx> ant1;
  std::vector<cplx> ant2;  // empty for SISO
};

Burst modulate_burst(const SimConfig& c, const modem::OfdmGrid& grid, std::span<const cplx> symbols) {
  Burst b;
  modem::PilotState pilots;
  const std::vector<cplx> no_pilots(modem::kPilotCarriers);
  auto append = [&](std::vector<cplx>& out, std::span<const cplx> bins) {
    const auto t = grid.modulate_bins(bins);
    out.insert(out.end(), t.begin(), t.end());
  };
  if (c.stbc) {
    const auto pre = stbc::build_preamble(grid);
    append(b.ant1, pre.ant1.front());
    append(b.ant2, pre.ant2.front());
    const auto pair = stbc::stbc_encode(symbols);
    for (std::size_t s = 0; s < pair.ant1.size(); ++s) {
      // Pilots ride on antenna 1 only.
      append(b.ant1, grid.assemble(pair.ant1[s], modem::next_pilots(pilots)));
      append(b.ant2, grid.assemble(pair.ant2[s], no_pilots));
    }
  } else {
    append(b.ant1, stbc::build_preamble_siso(grid));
    for (std::size_t off = 0; off < symbols.size(); off += modem::kDataCarriers)
      append(b.ant1, grid.assemble(symbols.subspan(off, modem::kDataCarriers), modem::next_pilots(pilots)));
  }
  return b;
}

// Equalized data symbols in transmit order with their noise gains.
stbc::Combined receive_burst(const SimConfig& c, const modem::OfdmGrid& grid, std::span<const cplx> rx,
                             const channel::MisoChannel& ch) {
  const std::size_t len = grid.channel_symbol_length();
  const std::size_t nsym = rx.size() / len;
  std::vector<std::vector<cplx>> bins(nsym);
  for (std::size_t s = 0; s < nsym; ++s) bins[s] = grid.demodulate_bins(rx.subspan(s * len, len));

  stbc::ChannelEstimate est;
  if (c.csi == Csi::perfect) {
    const auto h1 = ch.frequency_response(1);
    const auto h2 = ch.frequency_response(2);
    for (int carrier : grid.data_carriers()) {
      est.h1.push_back(h1[modem::OfdmGrid::bin(carrier)]);
      if (c.stbc) est.h2.push_back(h2[modem::OfdmGrid::bin(carrier)]);
    }
  } else if (c.stbc) {
    est = stbc::estimate_channel(bins[0], grid, estimator_for(c));
  } else {
    est = stbc::estimate_channel_siso(bins[0], grid, estimator_for(c));
  }

  stbc::Combined all;
  auto append = [&](const stbc::Combined& part) {
    all.symbols.insert(all.symbols.end(), part.symbols.begin(), part.symbols.end());
    all.noise_gain.insert(all.noise_gain.end(), part.noise_gain.begin(), part.noise_gain.end());
    all.erased.insert(all.erased.end(), part.erased.begin(), part.erased.end());
    all.erasures += part.erasures;
  };
  if (c.stbc) {
    for (std::size_t s = 1; s + 1 < nsym; s += 2)
      append(stbc::stbc_combine(grid.extract_data(bins[s]), grid.extract_data(bins[s + 1]), est));
  } else {
    for (std::size_t s = 1; s < nsym; ++s) append(stbc::siso_equalize(grid.extract_data(bins[s]), est));
  }
  return all;
}

std::uint64_t count_bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint8_t other = i < b.size() ? b[i] : 0;
    errors += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(a[i] ^ other)));
  }
  return errors;
}

BerPoint make_point(Mode mode, double ebn0_db) {
  BerPoint p;
  p.mode = mode;
  p.ebn0_db = ebn0_db;
  return p;
}

}  // namespace

double SnrModel::channel_esn0_db(double v) const {
  if (axis == SnrAxis::esn0) return v;
  if (count_overhead) return channel::ebn0_to_esn0(v, bits_per_point, code_rate, grid);
  // Data carriers see Es/N0 = Eb/N0 * b * R; the per-sample figure is lower
  // by the share of the FFT bins that carry energy.
  return channel::ebn0_to_esn0(v, bits_per_point, code_rate) +
         linear_to_db(static_cast<double>(modem::kUsedCarriers) / modem::kFftSize);
}

double SnrModel::ebn0_db(double v) const {
  if (axis == SnrAxis::ebn0) return v;
  const double offset = count_overhead
                            ? channel::ebn0_to_esn0(0.0, bits_per_point, code_rate, grid)
                            : channel::ebn0_to_esn0(0.0, bits_per_point, code_rate) +
                                  linear_to_db(static_cast<double>(modem::kUsedCarriers) / modem::kFftSize);
  return v - offset;
}

double SnrModel::carrier_noise_variance(double v) const {
  const double n0 = channel::noise_variance(channel_esn0_db(v), 1.0);
  const double g = modem::OfdmGrid::carrier_gain();
  return n0 / (g * g);
}

std::vector<BerPoint> run_theoretical(const SimConfig& c) {
  const modem::OfdmGrid grid(c.cp_divisor, c.oversampling);
  const auto snr = snr_model(c, grid, true);
  std::vector<BerPoint> out;
  for (double v : c.sweep) {
    auto p = make_point(Mode::theoretical, snr.ebn0_db(v));
    p.ber = modem::theoretical_ber(c.effective_modulation(), p.ebn0_db);
    out.push_back(p);
  }
  return out;
}

std::vector<BerPoint> run_semianalytic(const SimConfig& c) {
  if (c.profile || c.security) throw ConfigError("semianalytic mode supports only the uncoded, unsecured chain");
  const modem::OfdmGrid grid(c.cp_divisor, c.oversampling);
  const auto snr = snr_model(c, grid, true);
  const auto mod = c.effective_modulation();
  const auto& con = modem::Constellation::get(mod);
  const unsigned k = con.bits_per_point();
  const double d2 = con.min_distance() * con.min_distance();

  // Minimum-distance neighbors of every label with their Hamming distance.
  struct Neighbor {
    unsigned label;
    unsigned hamming;
  };
  std::vector<std::vector<Neighbor>> neighbors(con.size());
  for (unsigned a = 0; a < con.size(); ++a)
    for (unsigned b = 0; b < con.size(); ++b)
      if (a != b && std::abs(std::norm(con.point(a) - con.point(b)) - d2) < 1e-9)
        neighbors[a].push_back({b, static_cast<unsigned>(std::popcount(a ^ b))});

  // Per received point: distances to the decision boundaries, weights, and
  // the noise gain. Erased points count as coin flips.
  struct Term {
    double distance;
    double weight;
    double noise_gain;
  };
  std::vector<Term> terms;
  std::uint64_t points = 0, erased = 0;
  const std::size_t nsym = static_cast<std::size_t>(c.data_symbols()) * modem::kDataCarriers;
  for (unsigned r = 0; r < c.realizations; ++r) {
    std::vector<unsigned> labels(nsym);
    std::vector<cplx> symbols(nsym);
    for (std::size_t i = 0; i < nsym; ++i) {
      labels[i] = static_cast<unsigned>(i % con.size());
      symbols[i] = con.point(labels[i]);
    }
    const auto burst = modulate_burst(c, grid, symbols);
    auto ch = make_channel(c, grid, Rng::derive_seed(c.seed, {r, static_cast<std::uint64_t>(Stream::channel)}));
    const auto rx = c.stbc ? ch.apply(burst.ant1, burst.ant2) : ch.apply_siso(burst.ant1);
    const auto eq = receive_burst(c, grid, rx, ch);
    for (std::size_t i = 0; i < nsym; ++i) {
      ++points;
      if (eq.erased[i]) {
        ++erased;
        continue;
      }
      const cplx p = con.point(labels[i]);
      for (const auto& nb : neighbors[labels[i]]) {
        const cplx u = (con.point(nb.label) - p) / std::sqrt(d2);
        const double along = (eq.symbols[i] - p).real() * u.real() + (eq.symbols[i] - p).imag() * u.imag();
        terms.push_back({std::sqrt(d2) / 2.0 - along, static_cast<double>(nb.hamming) / k, eq.noise_gain[i]});
      }
    }
  }

  std::vector<BerPoint> out;
  for (double v : c.sweep) {
    auto pt = make_point(Mode::semianalytic, snr.ebn0_db(v));
    const double n0 = snr.carrier_noise_variance(v);
    double sum = 0.5 * static_cast<double>(erased);
    for (const auto& t : terms) {
      const double sigma = std::sqrt(n0 * t.noise_gain / 2.0);
      sum += t.weight * (sigma > 0 ? modem::q_function(t.distance / sigma) : (t.distance < 0 ? 1.0 : 0.0));
    }
    pt.ber = std::clamp(sum / static_cast<double>(points), 0.0, 1.0);
    pt.frames = c.realizations;
    out.push_back(pt);
  }
  return out;
}

FrameOutcome simulate_frame(const SimConfig& c, std::size_t point, std::uint64_t frame) {
  const modem::OfdmGrid grid(c.cp_divisor, c.oversampling);
  const auto snr = snr_model(c, grid, false);
  const auto mod = c.effective_modulation();
  const std::uint64_t pt = point;
  Rng data_rng = Rng::derive(c.seed, {pt, frame, static_cast<std::uint64_t>(Stream::data)});

  std::vector<std::uint8_t> payload(c.payload_bytes());
  for (auto& b : payload) b = data_rng.byte();

  std::optional<secmac::FrameSealer> sealer;
  std::vector<std::uint8_t> wire;
  if (c.security) {
    sealer.emplace(c.enc_key, c.mac_key, c.mac_bits);
    wire = sealer->seal(payload, data_rng.next_u64());
    if (c.tamper) {
      const std::uint64_t bit = 80 + data_rng.next_u64() % (8 * (wire.size() - 10));
      wire[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    }
    wire.resize(c.burst_capacity_bytes(), 0);
  } else {
    wire = payload;
  }

  const fec::Bits bits = c.profile ? fec::fec_encode(wire, fec::profile(*c.profile)) : fec::unpack_bits(wire);
  const auto symbols = modem::qam_map(bits, mod);
  const auto burst = modulate_burst(c, grid, symbols);

  FrameOutcome out;
  for (const auto& s : burst.ant1) out.tx_energy += std::norm(s);
  for (const auto& s : burst.ant2) out.tx_energy += std::norm(s);
  out.tx_samples = burst.ant1.size() / grid.oversampling();
  out.tx_energy /= grid.oversampling();

  auto ch = make_channel(c, grid, Rng::derive_seed(c.seed, {pt, frame, static_cast<std::uint64_t>(Stream::channel)}));
  auto rx = c.stbc ? ch.apply(burst.ant1, burst.ant2) : ch.apply_siso(burst.ant1);
  Rng noise_rng = Rng::derive(c.seed, {pt, frame, static_cast<std::uint64_t>(Stream::noise)});
  channel::add_awgn(rx, snr.channel_esn0_db(c.sweep[point]), kNominalSamplePower, noise_rng, grid.oversampling());

  const auto eq = receive_burst(c, grid, rx, ch);
  const auto hard = modem::qam_demap(eq.symbols, mod, eq.erased);

  std::vector<std::uint8_t> received;
  bool decode_failure = false;
  if (c.profile) {
    auto decoded = fec::fec_decode(hard, fec::profile(*c.profile));
    decode_failure = !decoded.ok();
    received = std::move(decoded.bytes);
  } else {
    // Erased bits are counted as errors by forcing them to the wrong value.
    fec::Bits b(hard.size());
    const auto sent = fec::unpack_bits(wire);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = hard[i] == fec::kErasure ? static_cast<std::uint8_t>(sent[i] ^ 1u) : hard[i];
    received = fec::pack_bits(b);
  }

  std::vector<std::uint8_t> recovered;
  if (sealer) {
    auto opened = sealer->open(received);
    out.auth_failure = !opened.ok();
    recovered = opened.ok() ? std::move(opened.payload) : std::move(opened.recovered);
  } else {
    recovered = std::move(received);
  }
  out.bits = 8 * payload.size();
  out.bit_errors = count_bit_errors(payload, recovered);
  out.frame_error = out.bit_errors > 0 || decode_failure || out.auth_failure;
  return out;
}

std::vector<BerPoint> run_montecarlo(const SimConfig& c) {
  const modem::OfdmGrid grid(c.cp_divisor, c.oversampling);
  const auto snr = snr_model(c, grid, false);
  unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t batch = std::max<std::size_t>(16, 4 * threads);

  std::vector<BerPoint> out;
  for (std::size_t point = 0; point < c.sweep.size(); ++point) {
    auto p = make_point(Mode::montecarlo, snr.ebn0_db(c.sweep[point]));
    double energy = 0.0;
    std::uint64_t samples = 0;
    bool done = false;
    std::vector<FrameOutcome> results(batch);
    for (std::uint64_t base = 0; !done; base += batch) {
      // Frames are independent; evaluate a batch, then fold it in frame order
      // so the stopping point does not depend on the thread count.
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < batch;) results[i] = simulate_frame(c, point, base + i);
      };
      if (threads <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
      }
      for (const auto& r : results) {
        p.bits += r.bits;
        p.bit_errors += r.bit_errors;
        p.frames += 1;
        p.frame_errors += r.frame_error ? 1 : 0;
        p.auth_failures += r.auth_failure ? 1 : 0;
        energy += r.tx_energy;
        samples += r.tx_samples;
        const bool enough_errors = c.min_errors > 0 && p.bit_errors >= c.min_errors && p.bits >= c.min_bits;
        if (p.bits >= c.max_bits || enough_errors || (c.max_frames && p.frames >= c.max_frames)) {
          done = true;
          break;
        }
      }
    }
    p.ber = p.bits ? static_cast<double>(p.bit_errors) / static_cast<double>(p.bits) : 0.0;
    p.tx_power = samples ? energy / static_cast<double>(samples) : 0.0;
    out.push_back(p);
  }
  return out;
}

std::vector<BerPoint> run(const SimConfig& c) {
  c.validate();
  switch (c.mode) {
    case Mode::theoretical: return run_theoretical(c);
    case Mode::semianalytic: return run_semianalytic(c);
    case Mode::montecarlo: return run_montecarlo(c);
  }
  throw ConfigError("unknown mode");
}

}  // namespace wimax::harness
