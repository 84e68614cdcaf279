#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tfi/reconstruct.hpp"
#include "tfi/simulate.hpp"
#include "tfi/types.hpp"

namespace tfi {

/// Standard SSIM parameters: 11x11 Gaussian window (sigma 1.5),
/// k1 = 0.01, k2 = 0.03.
struct SsimParams {
  int window = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// Mean local SSIM over all fully interior window positions. Color images
/// score as the average of the per-channel values. Both images must have
/// the same shape and be at least window x window.
double ssim(const ScalarImage& a, const ScalarImage& b,
            const SsimParams& params = {});

/// 10*log10(L^2 / MSE), capped at 99.0 dB (the zero-MSE sentinel).
double psnr(const ScalarImage& a, const ScalarImage& b, double dynamic_range);

/// Min-max normalization to [0, 1]; a constant image maps to all zeros.
ScalarImage normalize_unit(const ScalarImage& img);

struct CurvePoint {
  uint32_t m = 0;
  double ssim = 0.0;
  double psnr = 0.0;
};

/// Scoring reference for reconstructions: the squared noiseless render of
/// the scene (single-measurement identity: the correlation image of a
/// noise-free constant acquisition is proportional to the squared counts),
/// min-max normalized.
ScalarImage squared_reference(const Scene& scene, const SimModel& model);

/// Measurement-count sweep: for each m, renders a fresh m-frame stack
/// (same master seed, so acquisitions grow by prefix), reconstructs,
/// normalizes, and scores against squared_reference. ms must be ascending
/// and non-empty.
std::vector<CurvePoint> sweep(const Scene& scene, const SimModel& model,
                              std::span<const uint32_t> ms, PairingMode mode);

/// CSV with header "m,ssim,psnr", one row per point, 6 decimal places.
void write_curve_csv(std::ostream& os, std::span<const CurvePoint> points);

}  // namespace tfi
