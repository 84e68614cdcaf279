#include "tfi/kernels.hpp"

#include <cmath>

namespace tfi::kernels {

void g2_scalar(const uint16_t* const* frames, uint32_t m, size_t begin,
               size_t end, bool cross, double* out) {
  const uint32_t pairs = cross ? m - 1 : m;
  for (size_t p = begin; p < end; ++p) {
    double sum = 0.0;
    for (uint32_t a = 0; a < m; ++a) sum += double(frames[a][p]);
    const double nbar = sum / double(m);

    double acc = 0.0;
    for (uint32_t a = 0; a < pairs; ++a) {
      const double da = double(frames[a][p]) - nbar;
      const double db = cross ? double(frames[a + 1][p]) - nbar : da;
      const double apos = da > 0.0 ? da : 0.0;
      const double aneg = da < 0.0 ? da : 0.0;
      const double bpos = db > 0.0 ? db : 0.0;
      const double bneg = db < 0.0 ? db : 0.0;
      const double pp = std::fabs(apos * bpos);
      const double mm = std::fabs(aneg * bneg);
      const double pm = std::fabs((nbar - apos) * (nbar - bneg));
      const double mp = std::fabs((nbar - aneg) * (nbar - bpos));
      acc += (pp + mm) + (pm + mp);
    }
    out[p] = acc / double(pairs);
  }
}

void mean_scalar(const uint16_t* const* frames, uint32_t m, size_t begin,
                 size_t end, double* out) {
  for (size_t p = begin; p < end; ++p) {
    double sum = 0.0;
    for (uint32_t a = 0; a < m; ++a) sum += double(frames[a][p]);
    out[p] = sum / double(m);
  }
}

}  // namespace tfi::kernels
