#pragma once

#include <cstddef>
#include <cstdint>

namespace tfi::kernels {

/// Per-sample fluctuation-correlation kernel over an m-frame stack.
///
/// For every sample index p in [begin, end):
///   nbar   = (1/m) * sum over frames of counts[p]
///   pair a = frame alpha, frame alpha (cross=false, m pair terms)
///            frame alpha, frame alpha+1 (cross=true, m-1 pair terms)
///   per pair: split both counts into positive/negative deviations from
///   nbar, form the four absolute products (++, --, +-, -+), and sum.
///   out[p] = pair-term sum / pair count
///
/// The temporal reduction runs in fixed ascending frame order with the
/// term grouping ((pp+mm)+(pm+mp)), so every variant (and any pixel
/// partition across threads) is bit-identical to the scalar kernel.
/// cross=true requires m >= 2.
using G2Fn = void (*)(const uint16_t* const* frames, uint32_t m,
                      size_t begin, size_t end, bool cross, double* out);

/// Per-sample temporal mean over the stack.
using MeanFn = void (*)(const uint16_t* const* frames, uint32_t m,
                        size_t begin, size_t end, double* out);

void g2_scalar(const uint16_t* const* frames, uint32_t m, size_t begin,
               size_t end, bool cross, double* out);
void mean_scalar(const uint16_t* const* frames, uint32_t m, size_t begin,
                 size_t end, double* out);

#ifdef TFI_HAVE_AVX2
void g2_avx2(const uint16_t* const* frames, uint32_t m, size_t begin,
             size_t end, bool cross, double* out);
void mean_avx2(const uint16_t* const* frames, uint32_t m, size_t begin,
               size_t end, double* out);
#endif

enum class Backend { Auto, Scalar, Avx2 };

struct Dispatch {
  G2Fn g2;
  MeanFn mean;
  const char* name;
};

/// True when the running CPU supports the AVX2 variant (and it was built).
bool avx2_available();

/// Picks the kernel set. Backend::Auto honors the TFI_KERNEL environment
/// variable ("scalar", "avx2", "auto") and otherwise takes the fastest
/// available variant. Requesting an unavailable backend throws.
Dispatch select(Backend hint = Backend::Auto);

}  // namespace tfi::kernels
