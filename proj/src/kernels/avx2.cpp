// AVX2 variants. This file is the only one compiled with -mavx2; nothing in
// it may run before dispatch has confirmed CPU support. No FMA is used so the
// results match the scalar kernels bit for bit.

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "wimax/kernels.hpp"

namespace wimax::kernels::avx2 {

std::uint64_t acs_step(const std::uint16_t* old_metrics, std::uint16_t* new_metrics,
                       const std::uint16_t* branch, std::uint16_t weight) {
  const __m256i w = _mm256_set1_epi16(static_cast<short>(weight));
  std::uint64_t decisions = 0;
  for (unsigned half = 0; half < 2; ++half) {
    const unsigned j0 = 16 * half;
    const __m256i low = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(old_metrics + j0));
    const __m256i high = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(old_metrics + 32 + j0));
    const __m256i bm0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(branch + j0));
    const __m256i bm1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(branch + 32 + j0));

    const __m256i l0 = _mm256_add_epi16(low, bm0);
    const __m256i h0 = _mm256_add_epi16(high, _mm256_sub_epi16(w, bm0));
    const __m256i l1 = _mm256_add_epi16(low, bm1);
    const __m256i h1 = _mm256_add_epi16(high, _mm256_sub_epi16(w, bm1));
    const __m256i m0 = _mm256_min_epu16(l0, h0);
    const __m256i m1 = _mm256_min_epu16(l1, h1);
    const __m256i d0 = _mm256_cmpgt_epi16(l0, h0);
    const __m256i d1 = _mm256_cmpgt_epi16(l1, h1);

    // Interleave bit-0 and bit-1 successors: state 2j+b. unpack works per
    // 128-bit lane, so fix the lane order afterwards.
    const __m256i mlo = _mm256_unpacklo_epi16(m0, m1);
    const __m256i mhi = _mm256_unpackhi_epi16(m0, m1);
    const __m256i dlo = _mm256_unpacklo_epi16(d0, d1);
    const __m256i dhi = _mm256_unpackhi_epi16(d0, d1);
    const __m256i first = _mm256_permute2x128_si256(mlo, mhi, 0x20);
    const __m256i second = _mm256_permute2x128_si256(mlo, mhi, 0x31);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(new_metrics + 2 * j0), first);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(new_metrics + 2 * j0 + 16), second);

    const __m256i dfirst = _mm256_permute2x128_si256(dlo, dhi, 0x20);
    const __m256i dsecond = _mm256_permute2x128_si256(dlo, dhi, 0x31);
    const __m256i packed = _mm256_permute4x64_epi64(_mm256_packs_epi16(dfirst, dsecond), 0xD8);
    const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(packed));
    decisions |= std::uint64_t{mask} << (2 * j0);
  }
  return decisions;
}

namespace {

// conj(h) * r for two interleaved complex values.
inline __m256d conj_mul(__m256d h, __m256d r) {
  const __m256d neg = _mm256_set1_pd(-0.0);
  const __m256d hr = _mm256_movedup_pd(h);
  const __m256d hi = _mm256_permute_pd(h, 0xF);
  const __m256d t1 = _mm256_mul_pd(hr, r);
  const __m256d t2 = _mm256_mul_pd(hi, _mm256_permute_pd(r, 0x5));
  return _mm256_addsub_pd(t1, _mm256_xor_pd(t2, neg));
}

}  // namespace

std::size_t alamouti_combine(const cplx* r1, const cplx* r2, const cplx* h1, const cplx* h2,
                             cplx* s1, cplx* s2, double* noise_gain, std::uint8_t* erased,
                             std::size_t n) {
  const __m256d neg = _mm256_set1_pd(-0.0);
  const __m256d sqrt2 = _mm256_set1_pd(std::numbers::sqrt2);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t erasures = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vh1 = _mm256_loadu_pd(reinterpret_cast<const double*>(h1 + i));
    const __m256d vh2 = _mm256_loadu_pd(reinterpret_cast<const double*>(h2 + i));
    const __m256d vr1 = _mm256_loadu_pd(reinterpret_cast<const double*>(r1 + i));
    const __m256d vr2 = _mm256_loadu_pd(reinterpret_cast<const double*>(r2 + i));

    const __m256d hd = _mm256_hadd_pd(_mm256_mul_pd(vh1, vh1), _mm256_mul_pd(vh2, vh2));
    const __m256d den = _mm256_add_pd(hd, _mm256_permute_pd(hd, 0x5));

    const __m256d a = conj_mul(vh1, vr1);
    const __m256d b = conj_mul(vh2, vr2);
    const __m256d c = conj_mul(vh2, vr1);
    const __m256d d = conj_mul(vh1, vr2);
    const __m256d num1 = _mm256_addsub_pd(a, _mm256_xor_pd(b, neg));
    const __m256d num2 = _mm256_addsub_pd(c, d);
    const __m256d scale = _mm256_div_pd(sqrt2, den);
    const __m256d gain = _mm256_div_pd(two, den);

    alignas(32) double out1[4], out2[4], dens[4], gains[4];
    _mm256_store_pd(out1, _mm256_mul_pd(num1, scale));
    _mm256_store_pd(out2, _mm256_mul_pd(num2, scale));
    _mm256_store_pd(dens, den);
    _mm256_store_pd(gains, gain);
    for (unsigned k = 0; k < 2; ++k) {
      if (!(dens[2 * k] >= 1e-12)) {
        s1[i + k] = 0.0;
        s2[i + k] = 0.0;
        noise_gain[i + k] = std::numeric_limits<double>::infinity();
        erased[i + k] = 1;
        ++erasures;
      } else {
        s1[i + k] = cplx(out1[2 * k], out1[2 * k + 1]);
        s2[i + k] = cplx(out2[2 * k], out2[2 * k + 1]);
        noise_gain[i + k] = gains[2 * k];
        erased[i + k] = 0;
      }
    }
  }
  if (i < n)
    erasures += scalar::alamouti_combine(r1 + i, r2 + i, h1 + i, h2 + i, s1 + i, s2 + i,
                                         noise_gain + i, erased + i, n - i);
  return erasures;
}

void cmul_accumulate(cplx* out, const cplx* in, cplx h, std::size_t n) {
  const __m256d hr = _mm256_set1_pd(h.real());
  const __m256d hi = _mm256_set1_pd(h.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(reinterpret_cast<const double*>(in + i));
    const __m256d y = _mm256_loadu_pd(reinterpret_cast<const double*>(out + i));
    const __m256d t1 = _mm256_mul_pd(hr, x);
    const __m256d t2 = _mm256_mul_pd(hi, _mm256_permute_pd(x, 0x5));
    _mm256_storeu_pd(reinterpret_cast<double*>(out + i), _mm256_add_pd(y, _mm256_addsub_pd(t1, t2)));
  }
  if (i < n) scalar::cmul_accumulate(out + i, in + i, h, n - i);
}

void nearest_point(const cplx* samples, std::size_t n, const double* point_i, const double* point_q,
                   std::size_t num_points, std::uint16_t* out_index) {
  const std::size_t vec_points = num_points & ~std::size_t{3};
  const __m256d four = _mm256_set1_pd(4.0);
  for (std::size_t s = 0; s < n; ++s) {
    const __m256d x = _mm256_set1_pd(samples[s].real());
    const __m256d y = _mm256_set1_pd(samples[s].imag());
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d best_idx = _mm256_setzero_pd();
    __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    for (std::size_t p = 0; p < vec_points; p += 4) {
      const __m256d dx = _mm256_sub_pd(x, _mm256_loadu_pd(point_i + p));
      const __m256d dy = _mm256_sub_pd(y, _mm256_loadu_pd(point_q + p));
      const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d, lt);
      best_idx = _mm256_blendv_pd(best_idx, idx, lt);
      idx = _mm256_add_pd(idx, four);
    }
    alignas(32) double lane_best[4], lane_idx[4];
    _mm256_store_pd(lane_best, best);
    _mm256_store_pd(lane_idx, best_idx);
    double b = std::numeric_limits<double>::infinity();
    double bi = 0.0;
    for (unsigned l = 0; l < 4; ++l) {
      if (lane_best[l] < b || (lane_best[l] == b && lane_idx[l] < bi)) {
        b = lane_best[l];
        bi = lane_idx[l];
      }
    }
    auto result = static_cast<std::uint16_t>(bi);
    const double sx = samples[s].real(), sy = samples[s].imag();
    for (std::size_t p = vec_points; p < num_points; ++p) {
      const double dx = sx - point_i[p];
      const double dy = sy - point_q[p];
      const double d = dx * dx + dy * dy;
      if (d < b) {
        b = d;
        result = static_cast<std::uint16_t>(p);
      }
    }
    out_index[s] = result;
  }
}

}  // namespace wimax::kernels::avx2
