#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wimax/kernels.hpp"

namespace wimax::kernels {

namespace {

constexpr KernelTable kScalar{Backend::scalar, "scalar", &scalar::acs_step,
                              &scalar::alamouti_combine, &scalar::cmul_accumulate,
                              &scalar::nearest_point};

#ifdef WIMAX_HAVE_AVX2
constexpr KernelTable kAvx2{Backend::avx2, "avx2", &avx2::acs_step, &avx2::alamouti_combine,
                            &avx2::cmul_accumulate, &avx2::nearest_point};
#endif

bool cpu_has_avx2() noexcept {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  return detect() == Backend::avx2 ? &table(Backend::avx2) : &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> t{initial_table()};
  return t;
}

}  // namespace

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef WIMAX_HAVE_AVX2
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend b) {
  if (!available(b)) throw std::runtime_error("kernel backend not available on this machine");
#ifdef WIMAX_HAVE_AVX2
  if (b == Backend::avx2) return kAvx2;
#endif
  return kScalar;
}

Backend detect() noexcept {
  if (const char* env = std::getenv("WIMAX_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && available(Backend::avx2)) return Backend::avx2;
  }
  return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Backend b) { current().store(&table(b), std::memory_order_release); }

}  // namespace wimax::kernels
