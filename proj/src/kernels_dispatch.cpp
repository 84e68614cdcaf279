#include "tfi/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "tfi/types.hpp"

namespace tfi::kernels {

bool avx2_available() {
#ifdef TFI_HAVE_AVX2
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Backend env_backend() {
  const char* env = std::getenv("TFI_KERNEL");
  if (!env || !*env || std::strcmp(env, "auto") == 0) return Backend::Auto;
  if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  if (std::strcmp(env, "avx2") == 0) return Backend::Avx2;
  throw Error(Err::BadArgument,
              std::string("TFI_KERNEL: unknown backend '") + env + "'");
}

}  // namespace

Dispatch select(Backend hint) {
  Backend b = hint;
  if (b == Backend::Auto) b = env_backend();
  if (b == Backend::Auto)
    b = avx2_available() ? Backend::Avx2 : Backend::Scalar;

  switch (b) {
    case Backend::Scalar:
      return {g2_scalar, mean_scalar, "scalar"};
    case Backend::Avx2:
#ifdef TFI_HAVE_AVX2
      if (avx2_available()) return {g2_avx2, mean_avx2, "avx2"};
#endif
      throw Error(Err::BadArgument, "avx2 kernels not available on this CPU");
    default:
      return {g2_scalar, mean_scalar, "scalar"};
  }
}

}  // namespace tfi::kernels
