#include <cstdlib>
#include <stdexcept>
#include <string>

#include "bhs/simd/kernels.hpp"

namespace bhs::simd {

#if defined(BHS_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif

bool avx2_available() {
#if defined(BHS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

const KernelTable& kernels(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return scalar_kernels();
    case Backend::Avx2:
#if defined(BHS_HAVE_AVX2_KERNELS)
      if (avx2_available()) return avx2_kernels();
#endif
      throw std::runtime_error("AVX2 kernels are not available on this machine");
  }
  throw std::runtime_error("unknown kernel backend");
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (avx2_available()) out.push_back(Backend::Avx2);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* env = std::getenv("BHS_KERNELS");
    const std::string choice = env ? env : "";
    if (choice == "scalar") return scalar_kernels();
    if (choice == "avx2") return kernels(Backend::Avx2);
    if (!choice.empty()) throw std::runtime_error("BHS_KERNELS must be scalar or avx2");
    return avx2_available() ? kernels(Backend::Avx2) : scalar_kernels();
  }();
  return table;
}

}  // namespace bhs::simd
