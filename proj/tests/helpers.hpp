#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tfi/types.hpp"

namespace tfi::testing {

// Direct transcription of the local-statistics SSIM definition: explicit
// 11x11 Gaussian-weighted sums per window position, no separable
// filtering. Oracle for the library's ssim().
inline double naive_ssim(const ScalarImage& a, const ScalarImage& b,
                         double dynamic_range = 1.0) {
  const int win = 11, rad = 5;
  const double sigma = 1.5, k1 = 0.01, k2 = 0.03;
  double weights[11][11];
  double wsum = 0.0;
  for (int i = 0; i < win; ++i)
    for (int j = 0; j < win; ++j) {
      const double d2 = double((i - rad) * (i - rad) + (j - rad) * (j - rad));
      weights[i][j] = std::exp(-0.5 * d2 / (sigma * sigma));
      wsum += weights[i][j];
    }
  for (auto& row : weights)
    for (double& w : row) w /= wsum;

  const double c1 = (k1 * dynamic_range) * (k1 * dynamic_range);
  const double c2 = (k2 * dynamic_range) * (k2 * dynamic_range);
  const int w = int(a.width), h = int(a.height), ch = a.channels;

  double channel_total = 0.0;
  for (int c = 0; c < ch; ++c) {
    double total = 0.0;
    size_t count = 0;
    for (int y = rad; y < h - rad; ++y)
      for (int x = rad; x < w - rad; ++x) {
        double mu_a = 0, mu_b = 0, aa = 0, bb = 0, ab = 0;
        for (int i = 0; i < win; ++i)
          for (int j = 0; j < win; ++j) {
            const double va = a.at(uint32_t(x + j - rad), uint32_t(y + i - rad),
                                   uint8_t(c));
            const double vb = b.at(uint32_t(x + j - rad), uint32_t(y + i - rad),
                                   uint8_t(c));
            mu_a += weights[i][j] * va;
            mu_b += weights[i][j] * vb;
            aa += weights[i][j] * va * va;
            bb += weights[i][j] * vb * vb;
            ab += weights[i][j] * va * vb;
          }
        const double var_a = aa - mu_a * mu_a;
        const double var_b = bb - mu_b * mu_b;
        const double cov = ab - mu_a * mu_b;
        total += ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) /
                 ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
        ++count;
      }
    channel_total += total / double(count);
  }
  return channel_total / double(ch);
}

// Spearman rank correlation (no ties expected in these uses).
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const size_t n = x.size();
  const auto ranks = [n](const std::vector<double>& v) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    for (size_t k = 0; k < n; ++k) r[idx[k]] = double(k);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double d2 = 0.0;
  for (size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (double(n) * (double(n) * double(n) - 1.0));
}

}  // namespace tfi::testing
