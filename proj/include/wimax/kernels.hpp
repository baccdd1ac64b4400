#pragma once

// Data-parallel inner loops with a scalar reference implementation and SIMD
// variants. The active backend is chosen once at startup from CPUID (and the
// WIMAX_KERNELS environment variable: "scalar" or "avx2"); every variant must
// produce the same results as the scalar one, which the test suite checks.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wimax::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

/// Viterbi add-compare-select over the 64-state K=7 trellis.
///
/// State convention: next = ((prev << 1) | bit) & 63, so state s has the
/// predecessors s >> 1 and (s >> 1) | 32. `branch` holds the metric of the
/// transition from predecessor j (top bit clear) into state 2j + b at
/// branch[b * 32 + j]; the metric from predecessor j + 32 is
/// `weight - branch[...]` because both generator polynomials tap the oldest
/// register bit. Ties keep the top-bit-clear predecessor. Returns the
/// decision word: bit s set when state s came from its top-bit-set
/// predecessor. Metrics must stay below 2^15.
using AcsStepFn = std::uint64_t (*)(const std::uint16_t* old_metrics, std::uint16_t* new_metrics,
                                    const std::uint16_t* branch, std::uint16_t weight);

/// Per-carrier 2x1 Alamouti combining of two received slots.
/// s1 = sqrt2 (h1* r1 + h2 r2*) / d, s2 = sqrt2 (h2* r1 - h1 r2*) / d with
/// d = |h1|^2 + |h2|^2. noise_gain receives 2 / d. Carriers with
/// d < 1e-12 are erasures: outputs 0, noise_gain +inf, erased[i] = 1.
/// Returns the number of erasures.
using AlamoutiFn = std::size_t (*)(const cplx* r1, const cplx* r2, const cplx* h1, const cplx* h2,
                                   cplx* s1, cplx* s2, double* noise_gain, std::uint8_t* erased,
                                   std::size_t n);

/// out[i] += h * in[i].
using CmulAccumulateFn = void (*)(cplx* out, const cplx* in, cplx h, std::size_t n);

/// Index of the nearest point (squared Euclidean distance) for every sample;
/// on an exact tie the lowest index wins.
using NearestPointFn = void (*)(const cplx* samples, std::size_t n, const double* point_i,
                                const double* point_q, std::size_t num_points,
                                std::uint16_t* out_index);

struct KernelTable {
  Backend backend;
  std::string_view name;
  AcsStepFn acs_step;
  AlamoutiFn alamouti_combine;
  CmulAccumulateFn cmul_accumulate;
  NearestPointFn nearest_point;
};

/// Whether the backend was compiled in and the CPU supports it.
bool available(Backend b) noexcept;
/// Table for a specific backend; throws std::runtime_error if unavailable.
const KernelTable& table(Backend b);
/// Currently selected table.
const KernelTable& active() noexcept;
/// Override the automatic choice; throws std::runtime_error if unavailable.
void select(Backend b);
/// Best backend for this CPU after applying WIMAX_KERNELS.
Backend detect() noexcept;

namespace scalar {
std::uint64_t acs_step(const std::uint16_t* old_metrics, std::uint16_t* new_metrics,
                       const std::uint16_t* branch, std::uint16_t weight);
std::size_t alamouti_combine(const cplx* r1, const cplx* r2, const cplx* h1, const cplx* h2,
                             cplx* s1, cplx* s2, double* noise_gain, std::uint8_t* erased,
                             std::size_t n);
void cmul_accumulate(cplx* out, const cplx* in, cplx h, std::size_t n);
void nearest_point(const cplx* samples, std::size_t n, const double* point_i, const double* point_q,
                   std::size_t num_points, std::uint16_t* out_index);
}  // namespace scalar

namespace avx2 {
std::uint64_t acs_step(const std::uint16_t* old_metrics, std::uint16_t* new_metrics,
                       const std::uint16_t* branch, std::uint16_t weight);
std::size_t alamouti_combine(const cplx* r1, const cplx* r2, const cplx* h1, const cplx* h2,
                             cplx* s1, cplx* s2, double* noise_gain, std::uint8_t* erased,
                             std::size_t n);
void cmul_accumulate(cplx* out, const cplx* in, cplx h, std::size_t n);
void nearest_point(const cplx* samples, std::size_t n, const double* point_i, const double* point_q,
                   std::size_t num_points, std::uint16_t* out_index);
}  // namespace avx2

}  // namespace wimax::kernels
