// AVX2 variant of the correlation kernels, 4 samples per iteration.
// Compiled with -mavx2 in its own TU; selected at runtime via cpuid.
//
// Lane arithmetic mirrors the scalar kernel operation for operation
// (sub, masked classify, mul, and-abs, grouped adds, one div), so the
// results are bit-identical to g2_scalar. No FMA on purpose.

#include "tfi/kernels.hpp"

#ifdef TFI_HAVE_AVX2

#include <immintrin.h>

namespace tfi::kernels {

namespace {

inline __m256d load4(const uint16_t* p) {
  const __m128i v16 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(p));
  return _mm256_cvtepi32_pd(_mm_cvtepu16_epi32(v16));
}

inline __m256d abs4(__m256d x) {
  const __m256d mask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
  return _mm256_and_pd(mask, x);
}

}  // namespace

void g2_avx2(const uint16_t* const* frames, uint32_t m, size_t begin,
             size_t end, bool cross, double* out) {
  const uint32_t pairs = cross ? m - 1 : m;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vm = _mm256_set1_pd(double(m));
  const __m256d vpairs = _mm256_set1_pd(double(pairs));

  size_t p = begin;
  for (; p + 4 <= end; p += 4) {
    __m256d sum = zero;
    for (uint32_t a = 0; a < m; ++a)
      sum = _mm256_add_pd(sum, load4(frames[a] + p));
    const __m256d nbar = _mm256_div_pd(sum, vm);

    __m256d acc = zero;
    for (uint32_t a = 0; a < pairs; ++a) {
      const __m256d da = _mm256_sub_pd(load4(frames[a] + p), nbar);
      const __m256d db =
          cross ? _mm256_sub_pd(load4(frames[a + 1] + p), nbar) : da;
      const __m256d apos =
          _mm256_and_pd(da, _mm256_cmp_pd(da, zero, _CMP_GT_OQ));
      const __m256d aneg =
          _mm256_and_pd(da, _mm256_cmp_pd(da, zero, _CMP_LT_OQ));
      const __m256d bpos =
          _mm256_and_pd(db, _mm256_cmp_pd(db, zero, _CMP_GT_OQ));
      const __m256d bneg =
          _mm256_and_pd(db, _mm256_cmp_pd(db, zero, _CMP_LT_OQ));
      const __m256d pp = abs4(_mm256_mul_pd(apos, bpos));
      const __m256d mm = abs4(_mm256_mul_pd(aneg, bneg));
      const __m256d pm = abs4(_mm256_mul_pd(_mm256_sub_pd(nbar, apos),
                                            _mm256_sub_pd(nbar, bneg)));
      const __m256d mp = abs4(_mm256_mul_pd(_mm256_sub_pd(nbar, aneg),
                                            _mm256_sub_pd(nbar, bpos)));
      acc = _mm256_add_pd(
          acc, _mm256_add_pd(_mm256_add_pd(pp, mm), _mm256_add_pd(pm, mp)));
    }
    _mm256_storeu_pd(out + p, _mm256_div_pd(acc, vpairs));
  }
  if (p < end) g2_scalar(frames, m, p, end, cross, out);
}

void mean_avx2(const uint16_t* const* frames, uint32_t m, size_t begin,
               size_t end, double* out) {
  const __m256d vm = _mm256_set1_pd(double(m));
  size_t p = begin;
  for (; p + 4 <= end; p += 4) {
    __m256d sum = _mm256_setzero_pd();
    for (uint32_t a = 0; a < m; ++a)
      sum = _mm256_add_pd(sum, load4(frames[a] + p));
    _mm256_storeu_pd(out + p, _mm256_div_pd(sum, vm));
  }
  if (p < end) mean_scalar(frames, m, p, end, out);
}

}  // namespace tfi::kernels

#endif  // TFI_HAVE_AVX2
