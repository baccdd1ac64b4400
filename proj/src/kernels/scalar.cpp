#include <cmath>
#include <limits>
#include <numbers>

#include "wimax/kernels.hpp"

namespace wimax::kernels::scalar {

std::uint64_t acs_step(const std::uint16_t* old_metrics, std::uint16_t* new_metrics,
                       const std::uint16_t* branch, std::uint16_t weight) {
  std::uint64_t decisions = 0;
  for (unsigned b = 0; b < 2; ++b) {
    for (unsigned j = 0; j < 32; ++j) {
      const unsigned state = 2 * j + b;
      const std::uint16_t bm = branch[b * 32 + j];
      const auto via_low = static_cast<std::uint16_t>(old_metrics[j] + bm);
      const auto via_high = static_cast<std::uint16_t>(old_metrics[j + 32] + (weight - bm));
      if (via_high < via_low) {
        new_metrics[state] = via_high;
        decisions |= std::uint64_t{1} << state;
      } else {
        new_metrics[state] = via_low;
      }
    }
  }
  return decisions;
}

std::size_t alamouti_combine(const cplx* r1, const cplx* r2, const cplx* h1, const cplx* h2,
                             cplx* s1, cplx* s2, double* noise_gain, std::uint8_t* erased,
                             std::size_t n) {
  std::size_t erasures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h1r = h1[i].real(), h1i = h1[i].imag();
    const double h2r = h2[i].real(), h2i = h2[i].imag();
    const double r1r = r1[i].real(), r1i = r1[i].imag();
    const double r2r = r2[i].real(), r2i = r2[i].imag();

    const double den = (h1r * h1r + h1i * h1i) + (h2r * h2r + h2i * h2i);
    if (!(den >= 1e-12)) {
      s1[i] = 0.0;
      s2[i] = 0.0;
      noise_gain[i] = std::numeric_limits<double>::infinity();
      erased[i] = 1;
      ++erasures;
      continue;
    }
    // a = conj(h1) r1, b = conj(h2) r2, c = conj(h2) r1, d = conj(h1) r2
    const double a_re = h1r * r1r + h1i * r1i, a_im = h1r * r1i - h1i * r1r;
    const double b_re = h2r * r2r + h2i * r2i, b_im = h2r * r2i - h2i * r2r;
    const double c_re = h2r * r1r + h2i * r1i, c_im = h2r * r1i - h2i * r1r;
    const double d_re = h1r * r2r + h1i * r2i, d_im = h1r * r2i - h1i * r2r;
    const double scale = std::numbers::sqrt2 / den;
    // s1 ~ a + conj(b), s2 ~ c - conj(d)
    s1[i] = cplx((a_re + b_re) * scale, (a_im - b_im) * scale);
    s2[i] = cplx((c_re - d_re) * scale, (c_im + d_im) * scale);
    noise_gain[i] = 2.0 / den;
    erased[i] = 0;
  }
  return erasures;
}

void cmul_accumulate(cplx* out, const cplx* in, cplx h, std::size_t n) {
  const double hr = h.real(), hi = h.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = in[i].real(), xi = in[i].imag();
    out[i] = cplx(out[i].real() + (hr * xr - hi * xi), out[i].imag() + (hr * xi + hi * xr));
  }
}

void nearest_point(const cplx* samples, std::size_t n, const double* point_i, const double* point_q,
                   std::size_t num_points, std::uint16_t* out_index) {
  for (std::size_t s = 0; s < n; ++s) {
    const double x = samples[s].real(), y = samples[s].imag();
    double best = std::numeric_limits<double>::infinity();
    std::uint16_t best_idx = 0;
    for (std::size_t p = 0; p < num_points; ++p) {
      const double dx = x - point_i[p];
      const double dy = y - point_q[p];
      const double d = dx * dx + dy * dy;
      if (d < best) {
        best = d;
        best_idx = static_cast<std::uint16_t>(p);
      }
    }
    out_index[s] = best_idx;
  }
}

}  // namespace wimax::kernels::scalar
